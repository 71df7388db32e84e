// Random Euler products.
//
// Replace p^{-i tau} by independent uniform phases X_p = e^{i theta_p}.  With
// sigma = 1/2 + delta e^{-t_L} the objects are
//
//   Z_0  = log |M_0|^{-1} = sum_{p <= T_0} sum_k cos(k theta_p) / (k p^{k sigma}),
//   Y_0  = |M_0|^2,        E[Y_0] = prod_{p <= T_0} (1 + p^{-2 sigma}),
//   S_l  = sum_{T_0 < p <= T_l} [ cos(theta_p) p^{-sigma}
//                                 + cos(2 theta_p) p^{-2 sigma} / 2 ],
//   Y_l  = S_l - S_{l-1}   (the increment over (T_{l-1}, T_l]).
//
// The second-order truncation of log|1 - X_p p^{-sigma}|^{-1} gives S_l mean
// zero and variance v_l^2 = sum (1/(2 p^{2 sigma}) + 1/(8 p^{4 sigma})),
// with the doubly-logarithmic form v_l^2 ~ (t_l - t_0)/2 - delta e^{t_l - t_L}.
//
// When T_l overflows the sieve (t-mode ladders) the surrogate path replaces
// the prime sums by exact Gaussians: Z_0 ~ N(0, t_0/2) and S_l a partial sum
// of independent N(0, v_l^2 - v_{l-1}^2) increments with the analytic v_l^2.
//
// Exact formulas used as oracles:
//   E[e^{2k Z_0}]  = prod_{p <= T_0} sum_m d_k(p^m)^2 p^{-2 m sigma},
//   E[exp(lambda a sum cos theta_p / p^sigma)] = prod I_0(lambda a p^{-sigma}),
// and the barrier events
//   G_0    = { Z_0 - alpha t_0 in [0, sqrt(t_0)] },
//   G_l    = { L_l(Z_0) <= S_l <= U_l(Z_0) for all l },
//   G(V)   = G_0 and G_l and { Z_0 + S_L > V }.

#pragma once

#include <cstdint>
#include <vector>

#include "zetalab/params.hpp"
#include "zetalab/primes.hpp"
#include "zetalab/rng.hpp"

namespace zetalab {

struct model_sample {
  double z0 = 0.0;
  double y0 = 0.0;
  std::vector<double> s;  // S_l, l = 1..L
  std::vector<double> y;  // Y_l = S_l - S_{l-1}
};

// uniform angle for one prime of one sample; stream = sample index
double theta(const rng_stream& r, uint64_t prime_index);

// log |M_0|^{-1} alone (T0 need not sit on the ladder)
double z0_sample(const prime_table& tab, double T0, double sigma,
                 const rng_stream& r);

// full concrete path; requires T_L <= tab.limit
model_sample concrete_sample(const prime_table& tab, const ladder& lad,
                             const rng_stream& r);

// Gaussian surrogate path for t-mode ladders
model_sample surrogate_sample(const ladder& lad, const rng_stream& r);

// v_l^2 per level: exact prime sums (concrete) or analytic (surrogate);
// index 0 holds Var(Z_0) restricted to k <= 2 terms for the concrete case
// and t_0/2 for the surrogate.
std::vector<double> variance_ladder_concrete(const prime_table& tab,
                                             const ladder& lad);
std::vector<double> variance_ladder_surrogate(const ladder& lad);

// E[e^{2k Z_0}] with d_k(p^m) = binom(k+m-1, m); throws budget_error when the
// per-prime series cannot certify its tail.
double exact_z0_moment(const prime_table& tab, double T0, double k,
                       double sigma);

// log prod_{lo<p<=hi} I_0(lambda a p^{-sigma})
double mgf_exact_log(const prime_table& tab, double lo, double hi,
                     double lambda, double a, double sigma);
// one draw of exp(lambda a sum_{lo<p<=hi} cos(theta_p) p^{-sigma})
double mgf_draw(const prime_table& tab, double lo, double hi, double lambda,
                double a, double sigma, const rng_stream& r);

// 2q-th centred Gaussian-style moment bound (2q)!/(2^q q!) s^{2q}
double even_moment_bound(int q, double s);

// Markov: P(Z_0 > alpha t_0) <= E[e^{2 alpha Z_0}] (log T_0)^{-2 alpha^2}
double markov_z0_bound(const prime_table& tab, double T0, double alpha,
                       double sigma);

// barrier events anchored at z = Z_0
bool within_barriers(const ladder& lad, const std::vector<double>& s, double z);
bool good_zero(const ladder& lad, double z0);
bool good_event(const ladder& lad, const model_sample& ms, double V);

}  // namespace zetalab
