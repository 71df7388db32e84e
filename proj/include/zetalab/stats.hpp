// Small statistics toolbox: complementary error function built from series
// and continued fraction (the standard-library erfc serves as an oracle in
// the tests, not as the implementation), Gaussian tails, Kolmogorov-Smirnov
// distances, and the summary records the Monte Carlo drivers report.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace zetalab {

// erfc(x) = 2/sqrt(pi) int_x^inf e^{-u^2} du.  Maclaurin series for |x| <= 2,
// Lentz-evaluated continued fraction beyond; relative error below 1e-13 on
// the range exercised here.
double erfc_local(double x);

// P(N(0,1) <= x)
double normal_cdf(double x);

// P(N(0, variance) > V) = erfc(V / sqrt(2 variance)) / 2
double gaussian_tail(double V, double variance);

// Two-sided Kolmogorov-Smirnov distance between the sample and a continuous
// cdf.  The input is copied and sorted.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic critical value sqrt(-log(alpha/2)/2)/sqrt(n).
double ks_critical(std::size_t n, double alpha);

struct moment_summary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;   // unbiased sample variance
  double std_error = 0.0;  // sqrt(variance / n)
};
moment_summary summarize(const std::vector<double>& xs);

struct proportion {
  std::size_t hits = 0;
  std::size_t n = 0;
  double p_hat = 0.0;
  double se = 0.0;  // binomial sqrt(p(1-p)/n)
};
proportion make_proportion(std::size_t hits, std::size_t n);

}  // namespace zetalab
