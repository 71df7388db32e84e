// Actual zeta and actual Dirichlet polynomials over sampled tau in [T, 2T].
//
// The primary evaluator is the plain truncated sum
//   zeta(sigma + i tau) ~ sum_{n <= N} n^{-sigma - i tau},  N = ceil(T),
// good to O(T^{-1/2}) for tau in [T, 2T]; an independent Euler-Maclaurin
// evaluator with two Bernoulli correction terms serves as accuracy oracle.
//
// Partial sums over the ladder intervals keep the first two prime powers:
//   S_l(tau) = sum_{T_0 < p <= T_l} [ cos(tau log p) p^{-sigma}
//                                     + cos(2 tau log p) p^{-2 sigma} / 2 ],
// with the complex version S~_l summing p^{-sigma-i tau} + p^{-2(sigma+i tau)}/2.
//
// Mollifiers:  M_0 = prod_{p <= T_0} (1 - p^{-sigma-i tau}), expanded
// exactly by Moebius sums over T_0-smooth squarefree integers as an oracle;
// M_l = sum mu(m) m^{-sigma-i tau} over squarefree m with all prime factors
// in (T_{l-1}, T_l] and at most mu_l of them.  The approximation lemma
// compares |M_l| with exp(-(S_l - S_{l-1})) under the hypothesis
// |S~_l - S~_{l-1}| <= A (t_l - t_{l-1}): the residual must stay within the
// multiplicative band 5/sqrt(T_{l-1}) plus the truncation term
// exp(-mu_l + 5(A+1)(t_l - t_{l-1}) + 1).
//
// The good event on the zeta side anchors the barrier slope at
// S_0 = -(1/2) log |M_0| and requires |M_0|^2 inside the first-barrier
// window, every S_l between the barriers, and log|M_0|^{-1} + S_L > V.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "zetalab/params.hpp"
#include "zetalab/primes.hpp"
#include "zetalab/rng.hpp"

namespace zetalab {

struct zeta_table {
  double sigma = 0.0;
  std::size_t N = 0;
  std::vector<double> logn;  // log n, n = 1..N
  std::vector<double> npow;  // n^{-sigma}
};

// N = ceil(T_context); throws budget_error beyond 2e8 terms
zeta_table make_zeta_table(double sigma, double T_context);
std::complex<double> zeta_eval(const zeta_table& zt, double tau);

// Euler-Maclaurin oracle with B2 and B4 corrections, cutoff ~3 max(tau, 10)
std::complex<double> zeta_em_oracle(double sigma, double tau);

// complex interval sum over (lo, hi]
std::complex<double> s_tilde_interval(const prime_table& tab, double lo,
                                      double hi, double sigma, double tau);
// cumulative versions over (T_0, T_ell]
double s_ell(const prime_table& tab, const ladder& lad, int ell, double tau);
std::complex<double> s_tilde(const prime_table& tab, const ladder& lad, int ell,
                             double tau);

// M_0: product form (returned) and Moebius-sum oracle (capped enumeration)
std::complex<double> m0_eval(const prime_table& tab, double T0, double sigma,
                             double tau);
std::complex<double> m0_eval_moebius(const prime_table& tab, double T0,
                                     double sigma, double tau);

struct mollifier_support {
  int level = 0;
  double cap_mu = 0.0;
  // entry j is m = exp(logm[j]) with Moebius sign[j]; m itself may exceed
  // any integer type, so only the logarithm is kept
  std::vector<double> logm;
  std::vector<int> sign;
};
// squarefree products of primes in (lo, hi] with at most max_factors factors
mollifier_support build_support(const prime_table& tab, double lo, double hi,
                                int max_factors);
mollifier_support mollifier_support_level(const prime_table& tab,
                                          const ladder& lad, int ell);
std::complex<double> mollifier_eval(const mollifier_support& sup, double sigma,
                                    double tau);
// M = M_0 prod_l M_l with the length verdict prod T_l^{mu_l} <= T^{1/100}
struct mollifier_total_result {
  std::complex<double> value;
  bool length_ok = false;
};
mollifier_total_result mollifier_total(const prime_table& tab,
                                       const ladder& lad, double tau);

struct residual_report {
  bool hypothesis_met = false;
  double increment = 0.0;   // S_l - S_{l-1} (real)
  double envelope_e = 0.0;  // exp(-(S_l - S_{l-1}))
  double residual = 0.0;    // |M_l| - envelope_e
  double mult_band = 0.0;   // 5/sqrt(T_{l-1}) * envelope_e
  double additive = 0.0;    // exp(-mu + 5(A+1) dt + 1)
  bool within = false;      // |residual| <= mult_band + additive
};
// pedagogical core: interval (lo, hi], cap mu, hypothesis constant A,
// dt = t_l - t_{l-1}
residual_report molli_residual(const prime_table& tab, double lo, double hi,
                               double sigma, double tau, double mu, double A,
                               double dt);

struct mean_value_report {
  double mc = 0.0;
  double rhs = 0.0;
  double se = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;  // max(3 se / rhs, 5 N / T)
  bool ok = false;
};
mean_value_report mean_value_check(const std::vector<double>& coeffs, double T,
                                   std::size_t n_samples, uint64_t seed,
                                   int workers);

struct good_event_report {
  double tau = 0.0;
  double m0_log = 0.0;  // log |M_0|^{-1}
  double s0 = 0.0;      // -(1/2) log |M_0|
  double y0 = 0.0;      // |M_0|^2
  std::vector<double> s;
  bool window_ok = false;
  bool barriers_ok = false;
  bool exceed_ok = false;
  bool good = false;
};
good_event_report good_event_zeta(const prime_table& tab, const ladder& lad,
                                  double tau, double V);

struct tail_estimate {
  double T = 0.0;
  double sigma = 0.0;
  double V = 0.0;
  std::size_t n = 0;
  std::size_t hits = 0;
  double p_hat = 0.0;
  double se = 0.0;
  double prediction = 0.0;  // C_alpha(delta) * P(N(0, t/2) > V)
  double ratio = 0.0;       // p_hat / prediction
};
tail_estimate empirical_tail(const zeta_table& zt, double T, double V,
                             double delta, std::size_t n, uint64_t seed,
                             int workers);

struct mollification_report {
  double delta = 0.0;
  double estimate = 0.0;  // MC mean of |zeta M - 1|^2
  double se = 0.0;
  double bound_shape = 0.0;  // e^{-2 delta}/delta + e^{-mu_L/10}
};
mollification_report mollification_check(const prime_table& tab,
                                         const ladder& lad, double T,
                                         std::size_t n, uint64_t seed,
                                         int workers);

}  // namespace zetalab
