// Explicit constants: Euler-Mascheroni, Riemann and prime zeta values on the
// real axis, Barnes G, the arithmetic factors a_k, the random-matrix factors
// f_k = G(1+k)^2 / G(1+2k), the modified Bessel function I_0 feeding the
// moment generating function identity, and the leading-order constants built
// from them.
//
//   a_k = prod_p (1 - 1/p)^{k^2} sum_{m>=0} d_k(p^m)^2 p^{-m},
//   d_k(p^m) = binom(k+m-1, m)  (valid for real k >= 0 via the recurrence
//   d(m) = d(m-1)(k+m-1)/m).
//
// Truncating the product at p <= P leaves a tail controlled through the
// expansion log f_p(x) = c_2(k) x^2 + c_3(k) x^3 + O(x^4) at x = 1/p with
//   c_2(k) = -k^2 (k-1)^2 / 4,
//   c_3(k) = k^2 [ (k+1)^2(k+2)^2/36 - (k+1)^2 k^2/4 + k^2(k^2-1)/2
//                  - (k^2-1)(k^2-2)/6 ],
// so |log a_k - log partial| <= |c_2| S_2(P) + |c_3| S_3(P) + (k+1)^8/(3P^3)
// with S_j(P) = sum_{p > P} p^{-j} evaluated through the prime zeta function.
// The c_2/c_3 closed forms and the quartic remainder envelope are checked
// against finite-difference expansions in the tests.

#pragma once

#include <vector>

#include "zetalab/primes.hpp"

namespace zetalab {

double euler_gamma();

// zeta(s) for real s > 1 by Euler-Maclaurin.
double riemann_zeta_real(double s);

// P(s) = sum_p p^{-s} for real s > 1, via sum_n mu(n)/n log zeta(ns).
double prime_zeta(double s);

// Modified Bessel function of the first kind, order zero, and its logarithm
// (series below |x| = 15, asymptotic expansion beyond).
double bessel_i0(double x);
double bessel_i0_log(double x);

// log G(x) for x > 0: argument reduction through G(z+1) = Gamma(z) G(z) into
// [1, 2), then the canonical product with a zeta-accelerated tail.
double barnes_g_log(double x);

// f_k = G(1+k)^2 / G(1+2k)
double f_constant(int k);

struct a_result {
  double value = 0.0;
  double log_value = 0.0;
  double tail_bound = 0.0;  // bound on |log a_k - log_value|
  double p_limit = 0.0;
};
a_result a_constant(const prime_table& tab, double k, double p_limit);
// grows the prime limit (own sieve) until the tail bound drops below tol
a_result a_constant_auto(double k, double tol);

// Tail coefficients exposed for the tests.
double a_tail_c2(double k);
double a_tail_c3(double k);

// delta* = delta*(alpha): unique root of
//   delta + (1/2) log delta = log(alpha+1) + alpha log(1 + 1/alpha) + 1/2.
double delta_star(double alpha);

// C(alpha, delta) = e^{gamma alpha^2} a_alpha e^{-2 alpha^2 delta} (alpha+1)^{-36 alpha^2}
double c_alpha_constant(double alpha, double delta);

// c_k = a_k e^{gamma k^2} (k+1)^{-38 k^2}
double c_k_shape(double k);

struct moment_row {
  int k;
  double a_k;
  double a_tail;
  double f_k;
  double C_k;  // a_k f_k
  double c_k;
};
std::vector<moment_row> constant_set(int k_max, double tol);

}  // namespace zetalab
