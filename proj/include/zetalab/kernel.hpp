// Smoothed indicators and their polynomial surrogates.  The chain has three
// stages.
//
// Stage one is a nonnegative band-limited mollifier: an Ingham-style product
//   G(x) = prod_{k<=K} sinc(beta_k x),   beta_k = c0 / (k log^2(k+2)),
//   phi = G^2 / ||G||_2^2,
// with c0 chosen so sum_k beta_k = 0.999 pi.  Squaring makes phi >= 0 and
// doubles the transform support, so phihat lives in [-0.999, 0.999] and phi
// is entire of exponential type: sampling at step 1/4 oversamples by a factor
// of two.  Every integral below (mass, Parseval, transform values) is a plain
// trapezoid sum on that grid, which Poisson summation makes exact up to the
// truncated tail; the tail itself is certified through the crude envelope
//   phi(u) <= prod_k min(1, 1/(beta_k u))^2 / ||G||_2^2,
// integrated along a logarithmic grid.  At finite K the ideal decay
// exp(-|x|/log^2|x|) degrades to a polynomial of degree 2K; the envelope
// numbers are reported, never assumed.
//
// Stage two smooths interval indicators at scale Delta^{-c}.  With
// phi_c(y) = Delta^c phi(Delta^c y), L = Delta^{-1}, d = Delta^{-b},
//   h+(x) = integral of phi_c(x - y) over y in [-d, L + d],
//   h-(x) = same over [d, L - d],
// evaluated as differences of the distribution function Phi of phi, computed
// through the cardinal series Phi(y) = 1/2 + (h/pi) sum_j phi(x_j)
// Si(pi (y - x_j)/h) and saturated to exactly 0/1 once the envelope puts the
// remaining tail under 2^-53 (so the saturated value is the correctly rounded
// one; otherwise series noise of a few 1e-16 would sit on top of tails that
// are mathematically smaller than that, and strict monotonicity of the four
// Phi differences below would be lost to roundoff).  The
// bounds tested downstream: on [0, L] one needs h+ >= 1 - exp(-Delta^{c-b-1}),
// outside [-Delta^{-a}, L + Delta^{-a}] one needs h+ <= exp(-Delta^{c-a-1}),
// and the mirrored pair for h-.  The second number is doubly tiny (e^{-256}
// at Delta = 4, a = 2.5, b = 2a, c = 3a), far below quadrature resolution,
// so it is certified analytically through the envelope integral at scaled
// distance Delta^{c-a} - Delta^{c-b} and the computed h simply saturates.
//
// Stage three replaces h+- by genuine polynomials.  With nu = ceil(100 X
// Delta^c) and moments M_l = integral of xi^l hhat(xi),
//   D(x) = sum_{l<nu} (2 pi i x)^l / l!  M_l,
// where hhat(xi) = phihat(xi/Delta^c) Ihat(xi) is supported in
// [-Delta^c, Delta^c].  Substituting xi = Delta^c eta gives M_l =
// Delta^{c(l+1)} q_l with |q_l| <= Delta^c, the stored, dimensionless form of
// the coefficient bound |coeff_l| <= (2 pi)^l / l!  Delta^{c(l+2)}.  The q_l
// come from a Simpson rule on eta in [-1, 1]; because a quadrature rule is
// itself a measure, the truncated series evaluates that discrete measure's
// transform exactly, and the only unstructured error is arithmetic roundoff.
// Partial sums pass through magnitudes near exp(2 pi X Delta^c), so the
// moments are accumulated and stored in MPFR big floats with the working
// precision sized from 2 pi X Delta^c; evaluation stops early once the
// geometric tail of the remaining terms drops below 1e-24.  The squared
// polynomials then sit in the same sandwich as the indicators with slack
// exp(-Delta^{a-2}).
//
// The b = 2a, c = 3a exponent family is kept for the h sandwich; the
// polynomial stage uses the rescaled family b = a + log_Delta 2.1,
// c = a + log_Delta 9.45, which pins the smoothing-to-overspill ratios at
// 4.5 and 4.95 independently of Delta and keeps nu inside the 1e4 work cap
// at Delta = 4.

#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

namespace zetalab {

struct kernel_spec {
  double a = 2.5;
  double b = 5.0;
  double c = 7.5;
};

// b = 2a, c = 3a (indicator smoothing side)
kernel_spec h_exponents(double a);
// rescaled family used by the polynomial stage, see header comment
kernel_spec d_exponents(double delta, double a);

struct ingham_kernel {
  int factors = 0;
  double c0 = 0.0;
  std::vector<double> beta;
  double step = 0.0;       // sampling step of the x grid
  double halfwidth = 0.0;  // grid covers |x| <= halfwidth
  double sat_width = 0.0;  // cdf saturates to exact 0/1 beyond this
  // deep-tail values of 1 - Phi on the grid from 25 up to sat_width,
  // projected onto monotone decreasing (see kernel_cdf)
  std::vector<double> tail_table;
  std::vector<double> phi_grid;  // phi(j * step), j = 0..J
  double norm2 = 0.0;            // ||G||_2^2

  // certification numbers, all measured at build time
  double mass_defect = 0.0;     // |trapezoid mass on a coarser grid - 1|
  double fhat_at_0 = 0.0;       // phihat(0) - 1
  double fhat_at_15 = 0.0;      // |phihat(1.5)|
  double fhat_sweep_max = 0.0;  // max |phihat| over points outside [-1, 1]
  double parseval_x = 0.0;      // int phi^2, x side
  double parseval_xi = 0.0;     // int |phihat|^2, xi side
  double parseval_diff = 0.0;
  double log_tail_at_halfwidth = 0.0;  // envelope tail certificate (log)
};

// throws infeasible_error when a certification target is missed
ingham_kernel build_kernel(int factors = 96);

double kernel_phi(const ingham_kernel& k, double x);
// transform by the exact-band trapezoid sum; valid for |xi| < 3
double kernel_phi_hat(const ingham_kernel& k, double xi);
// distribution function, clamped to [0, 1], exactly 0/1 beyond the grid
double kernel_cdf(const ingham_kernel& k, double y);
// log of the certified envelope bound on the mass of phi beyond u
double envelope_log_tail(const ingham_kernel& k, double u);

// sine integral Si(x) = int_0^x sin t / t dt (Maclaurin series below 5,
// continued fraction for E1(ix) above)
double si_integral(double x);

// smoothed indicator at scale Delta^{-c}; sign +1 -> outer h+, -1 -> inner h-
// pre: Delta^{b-a} > 2 so the overspill stays inside the fuzz band
double h_pm(const ingham_kernel& k, double delta, const kernel_spec& spec,
            int sign, double x);

// moments in MPFR; move-only owner of the big-float array
struct moment_array {
  std::vector<__mpfr_struct> v;
  moment_array() = default;
  moment_array(const moment_array&) = delete;
  moment_array& operator=(const moment_array&) = delete;
  moment_array(moment_array&& o) noexcept { v.swap(o.v); }
  moment_array& operator=(moment_array&& o) noexcept {
    clear();
    v.swap(o.v);
    return *this;
  }
  void init(long n, int bits);
  void clear();
  ~moment_array() { clear(); }
  mpfr_ptr operator[](long i) { return &v[size_t(i)]; }
  mpfr_srcptr operator[](long i) const { return &v[size_t(i)]; }
};

struct approx_poly {
  int sign = +1;
  double delta = 0.0;
  double x_max = 0.0;
  kernel_spec spec;
  long nu = 0;
  int bits = 0;
  moment_array q;         // scaled moments, M_l = Delta^{c(l+1)} q_l
  std::vector<double> q_d;  // double mirrors for reports and bound checks
  double q_abs_max = 0.0;
  double coeff_margin_min = 0.0;   // min over l of Delta^c - |q_l|
  double hermitian_residual = 0.0;  // max |F(-eta) - conj F(eta)| seen
};

struct approx_pair {
  approx_poly plus, minus;
};

// builds both signs off one transform pass; n_nodes = Simpson node count
// pre: nu = ceil(100 x_max Delta^c) <= 1e4, else budget_error
approx_pair d_poly_pair(const ingham_kernel& k, double delta,
                        const kernel_spec& spec, double x_max,
                        long n_nodes = 8193);
approx_poly d_poly(const ingham_kernel& k, double delta,
                   const kernel_spec& spec, double x_max, int sign,
                   long n_nodes = 8193);

// evaluate D(x); |x| <= x_max is the caller's contract.  tail_bound, when
// given, receives the certified bound on the dropped early-stop tail.
double d_eval(const approx_poly& p, double x, double* tail_bound = nullptr);

// log of (2 pi X)^nu / nu!  Delta^{c(nu+2)}, the Taylor remainder envelope
double taylor_remainder_log(const approx_poly& p);

struct sandwich_row {
  double x = 0.0;
  double h_minus = 0.0;
  double h_plus = 0.0;
  double d_minus_sq = 0.0;
  double d_plus_sq = 0.0;
  bool d_valid = false;
};

struct sandwich_report {
  double delta = 0.0;
  kernel_spec h_spec;
  kernel_spec d_spec;
  double x_max = 0.0;
  long n_grid = 0;

  long viol_h_plus = 0;
  long viol_h_minus = 0;
  long viol_d_plus = 0;
  long viol_d_minus = 0;
  long viol_order = 0;  // failures of 0 <= h- <= h+ <= 1
  double worst_h_plus = 0.0;  // most negative slack seen (0 when clean)
  double worst_h_minus = 0.0;
  double worst_d_plus = 0.0;
  double worst_d_minus = 0.0;

  // analytic backstops for the sub-resolution far bounds
  double cert_inner_log = 0.0;   // log 2 tail(Delta^{c-b}) vs log of inner slack
  double cert_outer_log = 0.0;   // log 2 tail(Delta^{c-a} - Delta^{c-b})
  double slack_inner_log = 0.0;  // log exp(-Delta^{c-b-1})
  double slack_outer_log = 0.0;  // log exp(-Delta^{c-a-1})
  bool certified = false;

  bool d_checked = false;
  std::string d_skip_reason;
  long d_nu = 0;
  double d_coeff_margin_min = 0.0;
  double d_trunc_bound = 0.0;  // worst early-stop tail across evaluations
  double parseval_diff = 0.0;

  std::vector<sandwich_row> rows;
};

// grid: n_grid uniform points on [-2 Delta^{-a}, Delta^{-1} + 2 Delta^{-a}]
// plus a fixed far field; polynomial checks limited to |x| <= x_max
sandwich_report verify_sandwich(const ingham_kernel& k, double delta, double a,
                                long n_grid, bool with_poly = true,
                                double x_max = 0.0, long n_nodes = 8193);

// Lebesgue measure of {1e-3 < h+ < 1 - 1e-3} on [lo, hi], n-point midpoint
double transition_measure(const ingham_kernel& k, double delta,
                          const kernel_spec& spec, double lo, double hi,
                          long n);

}  // namespace zetalab
