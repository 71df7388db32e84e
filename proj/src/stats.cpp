#include "zetalab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zetalab/accum.hpp"

namespace zetalab {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955125739;

// erf by Maclaurin series; adequate to |x| <= 2 where the terms still shrink
// geometrically before the factorial takes over.
double erf_series(double x) {
  double x2 = x * x;
  double term = x;  // x^(2n+1) (-1)^n / (n! (2n+1)), n = 0
  kahan_sum acc;
  acc.add(term);
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    double piece = term / (2 * n + 1);
    acc.add(piece);
    if (std::abs(piece) < 1e-18 * std::abs(acc.value())) break;
  }
  return kTwoOverSqrtPi * acc.value();
}

// Continued fraction erfc(x) e^{x^2} sqrt(pi) = 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...))))
// evaluated by the modified Lentz algorithm; valid for x > 0, used for x > 2.
double erfc_cf(double x) {
  const double tiny = 1e-300;
  double f = tiny, C = f, D = 0.0;
  // b_0 = x, a_n = n/2
  double b = x;
  f = b;
  C = b;
  D = 0.0;
  for (int n = 1; n < 300; ++n) {
    double a = 0.5 * n;
    D = b + a * D;
    if (D == 0.0) D = tiny;
    C = b + a / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) / (f * std::sqrt(M_PI));
}

}  // namespace

double erfc_local(double x) {
  if (x > 2.0) return erfc_cf(x);
  if (x < -2.0) return 2.0 - erfc_cf(-x);
  return 1.0 - erf_series(x);
}

double normal_cdf(double x) { return 0.5 * erfc_local(-x / std::sqrt(2.0)); }

double gaussian_tail(double V, double variance) {
  if (!(variance > 0.0)) throw std::domain_error("gaussian_tail: variance <= 0");
  return 0.5 * erfc_local(V / std::sqrt(2.0 * variance));
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double F = cdf(samples[i]);
    d = std::max(d, F - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - F);
  }
  return d;
}

double ks_critical(std::size_t n, double alpha) {
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) /
         std::sqrt(static_cast<double>(n));
}

moment_summary summarize(const std::vector<double>& xs) {
  moment_summary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  kahan_sum sum;
  for (double x : xs) sum.add(x);
  s.mean = sum.value() / static_cast<double>(s.n);
  if (s.n > 1) {
    kahan_sum sq;
    for (double x : xs) sq.add((x - s.mean) * (x - s.mean));
    s.variance = sq.value() / static_cast<double>(s.n - 1);
    s.std_error = std::sqrt(s.variance / static_cast<double>(s.n));
  }
  return s;
}

proportion make_proportion(std::size_t hits, std::size_t n) {
  proportion p;
  p.hits = hits;
  p.n = n;
  if (n > 0) {
    p.p_hat = static_cast<double>(hits) / static_cast<double>(n);
    p.se = std::sqrt(p.p_hat * (1.0 - p.p_hat) / static_cast<double>(n));
  }
  return p;
}

}  // namespace zetalab
