#pragma once
#include <optional>
#include <string>
#include <vector>

// Parameter ladder for the multiscale experiments.
//
// Everything downstream is phrased in the doubly-logarithmic variable
// t = log log T.  A ladder consists of a base point t_0, intermediate scales
// t_1 < ... < t_L below t, and the constants derived from them:
//
//   t_ell   = t - s * log_ell(t)          (log_ell = ell-fold iterated log)
//   sigma   = 1/2 + delta * e^{-t_L}
//   B       = alpha * s + 1/alpha,  C = 100
//   mu_ell  = 100 * max(alpha,1) * (t_ell - t_{ell-1}),  nu_ell = mu_ell / 10
//   Delta_0 = e^{100 alpha t_0},  Delta_ell = 10 alpha s * log_{ell-1}(t)
//
// The number of levels, when derived, is the largest L with log_{L-1}(t) > e.
// The exponent s, when derived, is the smallest value on the increasing branch
// of the feasibility condition
//
//   s log_L(t) - 7a log(s log_L(t)) > 7a log(max(alpha,1)) + log(K)
//
// with a = 5 and K = 2e6 by default.  At desk scales (small t) that s is far
// too large to keep the levels ordered; build_ladder then falls back to a
// small pedagogical s and records the failed condition in the validation
// report instead of silently clamping.
namespace zetalab {

// log applied k times; throws std::domain_error when an intermediate is <= 0.
double iter_log(double x, int k);

enum class ladder_mode { from_T, from_t, explicit_levels };

struct ladder_config {
  ladder_mode mode = ladder_mode::from_T;
  double T = 0.0;  // from_T mode (capped at 1e15)
  double t = 0.0;  // from_t and explicit_levels modes
  double alpha = 1.0;
  double delta = 1.0;
  std::optional<double> s_exponent;    // else derived / pedagogical fallback
  std::optional<double> explicit_t0;   // required in explicit_levels mode
  std::vector<double> explicit_levels; // t_1..t_L, explicit_levels mode only
  double a_const = 5.0;
  double K_const = 2e6;
};

struct check_item {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ladder {
  double alpha = 1.0;
  double delta = 1.0;
  double t = 0.0;
  double t0 = 0.0;
  std::vector<double> levels;  // t_1..t_L
  int L = 0;
  double s_exponent = 0.0;
  std::string s_source;  // "explicit" | "derived" | "pedagogical"
  bool has_T = false;
  double T = 0.0;

  double sigma = 0.5;
  double B = 0.0;
  double C = 100.0;
  std::vector<double> mu;        // mu_1..mu_L
  std::vector<double> nu;        // nu_1..nu_L
  double delta0_log = 0.0;       // log Delta_0 = 100 alpha t0
  double Delta0 = 0.0;           // e^{100 alpha t0}; +inf when out of range
  std::vector<double> Delta;     // Delta_1..Delta_L

  std::vector<check_item> validation;

  double t_level(int ell) const;  // ell = 0..L
  double T_level(int ell) const;  // exp(exp(t_ell)); +inf when out of range
  double T0() const { return T_level(0); }
};

ladder build_ladder(const ladder_config& cfg);

// Feasibility condition pieces, exposed for tests and reports.
double s_condition_lhs(double s, double logL_t, double a_const);
double s_condition_rhs(double alpha, double a_const, double K_const);
// Smallest s on the increasing branch satisfying the condition; nullopt when
// log_L(t) <= 0 so no positive s can satisfy it.
std::optional<double> derive_s(double logL_t, double alpha, double a_const,
                               double K_const);

// Barrier geometry.  z is the anchor value (Z_0 in the random model, the
// mollifier surrogate S_0 = -(1/2) log|M_0| on the zeta side).
double slope(const ladder& lad, double z);  // (alpha t - z)/(t_L - t0)

struct barrier {
  double lower = 0.0;
  double upper = 0.0;
};
// Level ell in 1..L: center m(z)(t_ell - t0), half-widths C resp. B times
// log_ell(t) (the t-side stand-in for log_{ell+2} T).
barrier barriers(const ladder& lad, int ell, double z);
// Level-0 window on the product side: [e^{-2 alpha t0}, e^{-2 alpha t0 + 2 sqrt(t0)}].
barrier first_barrier(const ladder& lad);

// JSON interfaces (snake_case keys mirroring ladder_config fields).
ladder_config parse_ladder_config(const std::string& json_text);
std::string ladder_json(const ladder& lad);
std::string ladder_table(const ladder& lad);  // two-column description

}  // namespace zetalab
