#include "zetalab/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "zetalab/accum.hpp"
#include "zetalab/errors.hpp"

namespace zetalab {

double euler_gamma() {
  // H_n - log n - 1/(2n) + 1/(12 n^2) - 1/(120 n^4) + 1/(252 n^6); the next
  // term is ~1/(240 n^8), far below double precision at n = 1000.
  const int n = 1000;
  kahan_sum h;
  for (int i = 1; i <= n; ++i) h.add(1.0 / i);
  double nn = static_cast<double>(n);
  return h.value() - std::log(nn) - 1.0 / (2 * nn) + 1.0 / (12 * nn * nn) -
         1.0 / (120 * std::pow(nn, 4)) + 1.0 / (252 * std::pow(nn, 6));
}

double riemann_zeta_real(double s) {
  if (!(s > 1.0)) throw std::domain_error("riemann_zeta_real: need s > 1");
  if (s > 55.0) return 1.0 + std::exp2(-s) + std::pow(3.0, -s);
  const int N = 50;
  kahan_sum acc;
  for (int n = 1; n < N; ++n) acc.add(std::pow(n, -s));
  double Ns = std::pow(N, -s);
  acc.add(0.5 * Ns);
  acc.add(N * Ns / (s - 1.0));  // N^{1-s}/(s-1)
  // Bernoulli corrections B2, B4, B6
  double t1 = s * Ns / N;
  acc.add(t1 / 12.0);
  double t2 = s * (s + 1) * (s + 2) * Ns / std::pow(N, 3);
  acc.add(-t2 / 720.0);
  double t3 = s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * Ns / std::pow(N, 5);
  acc.add(t3 / 30240.0);
  return acc.value();
}

double prime_zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("prime_zeta: need s > 1");
  // need ns <= 64/s terms; mu by a tiny factor sieve
  int N = static_cast<int>(std::ceil(64.0 / s)) + 1;
  std::vector<int> mu(static_cast<size_t>(N) + 1, 1);
  std::vector<int> spf(static_cast<size_t>(N) + 1, 0);
  for (int i = 2; i <= N; ++i)
    if (!spf[i])
      for (int j = i; j <= N; j += i)
        if (!spf[j]) spf[j] = i;
  for (int i = 2; i <= N; ++i) {
    int m = i, cnt = 0;
    bool squarefree = true;
    while (m > 1) {
      int p = spf[m], e = 0;
      while (m % p == 0) m /= p, ++e;
      if (e > 1) squarefree = false;
      ++cnt;
    }
    mu[i] = squarefree ? (cnt % 2 ? -1 : 1) : 0;
  }
  kahan_sum acc;
  for (int n = 1; n <= N; ++n) {
    if (mu[n] == 0) continue;
    double ns = n * s;
    if (ns > 70.0) break;
    acc.add(mu[n] * std::log(riemann_zeta_real(ns)) / n);
  }
  return acc.value();
}

double bessel_i0(double x) { return std::exp(bessel_i0_log(x)); }

double bessel_i0_log(double x) {
  x = std::abs(x);
  if (x <= 15.0) {
    // sum_k (x^2/4)^k / (k!)^2
    double q = 0.25 * x * x;
    double term = 1.0;
    kahan_sum acc;
    acc.add(1.0);
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      acc.add(term);
      if (term < 1e-18 * acc.value()) break;
    }
    return std::log(acc.value());
  }
  // I0(x) ~ e^x / sqrt(2 pi x) sum_k a_k x^{-k}, a_k = prod_{j<=k}(2j-1)^2/(k! 8^k);
  // truncate at the smallest term (divergent series, error below that term)
  double sum = 1.0, term = 1.0, prev = 1e300;
  for (int k = 1; k < 40; ++k) {
    term *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (std::abs(term) >= prev) break;
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-18 * sum) break;
  }
  return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
}

namespace {

// log G(1+z) for z in [0, 1) via the canonical product
//   log G(1+z) = (z/2) log 2pi - (z + z^2(1+gamma))/2
//                + sum_{n>=1} [ n log(1+z/n) - z + z^2/(2n) ].
// Terms past n = N are summed exactly in j through
//   term_n = sum_{j>=3} (-1)^{j-1} z^j / (j n^{j-1}),
// giving sum_{n>N} = sum_{j>=3} (-1)^{j-1} z^j/j (zeta(j-1) - H_N^{(j-1)}).
double barnes_g_log_unit(double z) {
  if (z == 0.0) return 0.0;  // G(1) = 1
  static const double gamma = euler_gamma();
  const int N = 64;
  kahan_sum acc;
  acc.add(0.5 * z * std::log(2.0 * M_PI));
  acc.add(-0.5 * (z + z * z * (1.0 + gamma)));
  for (int n = 1; n <= N; ++n) {
    double nn = static_cast<double>(n);
    acc.add(nn * std::log1p(z / nn) - z + z * z / (2.0 * nn));
  }
  double zj = z * z;  // z^j running power, starts at j = 2
  for (int j = 3; j <= 60; ++j) {
    zj *= z;
    double hN = 0.0;
    for (int n = 1; n <= N; ++n) hN += std::pow(n, -(j - 1.0));
    double tail = riemann_zeta_real(j - 1.0) - hN;
    double piece = ((j % 2) ? 1.0 : -1.0) * zj * tail / j;
    acc.add(piece);
    if (std::abs(piece) < 1e-18) break;
  }
  return acc.value();
}

}  // namespace

double barnes_g_log(double x) {
  if (!(x > 0.0)) throw std::domain_error("barnes_g_log: need x > 0");
  // walk down through log G(x) = log Gamma(x-1) + log G(x-1)
  kahan_sum shift;
  while (x >= 2.0) {
    x -= 1.0;
    shift.add(std::lgamma(x));
  }
  while (x < 1.0) {
    shift.add(-std::lgamma(x));
    x += 1.0;
  }
  return shift.value() + barnes_g_log_unit(x - 1.0);
}

double f_constant(int k) {
  if (k < 0) throw std::domain_error("f_constant: need k >= 0");
  return std::exp(2.0 * barnes_g_log(1.0 + k) - barnes_g_log(1.0 + 2.0 * k));
}

double a_tail_c2(double k) { return -k * k * (k - 1.0) * (k - 1.0) / 4.0; }

double a_tail_c3(double k) {
  double k2 = k * k;
  return k2 * ((k + 1) * (k + 1) * (k + 2) * (k + 2) / 36.0 -
               (k + 1) * (k + 1) * k2 / 4.0 + k2 * (k2 - 1.0) / 2.0 -
               (k2 - 1.0) * (k2 - 2.0) / 6.0);
}

a_result a_constant(const prime_table& tab, double k, double p_limit) {
  if (!(k >= 0.0)) throw std::domain_error("a_constant: need k >= 0");
  if (p_limit > static_cast<double>(tab.limit))
    throw config_error("a_constant: p_limit exceeds the sieved table");
  a_result res;
  res.p_limit = p_limit;
  kahan_sum lg;
  auto [a, b] = tab.range(0.0, p_limit);
  (void)a;
  for (size_t i = 0; i < b; ++i) {
    double p = tab.primes[i];
    double x = 1.0 / p;
    // S_p = sum_m d_k(p^m)^2 p^{-m}
    double S = 1.0, d = 1.0;
    for (int m = 1; m < 400; ++m) {
      d *= (k + m - 1.0) / m;
      double term = d * d * std::pow(x, m);
      S += term;
      if (term < 1e-18 * S) break;
    }
    lg.add(k * k * std::log1p(-x) + std::log(S));
  }
  res.log_value = lg.value();
  res.value = std::exp(res.log_value);
  double S2 = prime_zeta(2.0) - prime_power_sum(tab, 0.0, p_limit, {{1.0, 2.0}});
  double S3 = prime_zeta(3.0) - prime_power_sum(tab, 0.0, p_limit, {{1.0, 3.0}});
  res.tail_bound = std::abs(a_tail_c2(k)) * S2 + std::abs(a_tail_c3(k)) * S3 +
                   std::pow(k + 1.0, 8) / (3.0 * std::pow(p_limit, 3));
  return res;
}

a_result a_constant_auto(double k, double tol) {
  double p_limit = 1e6;
  for (int iter = 0; iter < 12; ++iter) {
    prime_table tab = sieve(static_cast<uint64_t>(p_limit));
    a_result res = a_constant(tab, k, p_limit);
    if (res.tail_bound < tol) return res;
    p_limit *= 2.0;
  }
  throw budget_error("a_constant_auto: tolerance unreachable within the sieve budget");
}

double delta_star(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("delta_star: need alpha > 0");
  double rhs =
      std::log(alpha + 1.0) + alpha * std::log1p(1.0 / alpha) + 0.5;
  auto g = [&](double d) { return d + 0.5 * std::log(d) - rhs; };
  double lo = 1e-12, hi = 1.0;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double c_alpha_constant(double alpha, double delta) {
  a_result a = a_constant_auto(alpha, 1e-6);
  return std::exp(euler_gamma() * alpha * alpha + a.log_value -
                  2.0 * alpha * alpha * delta -
                  36.0 * alpha * alpha * std::log(alpha + 1.0));
}

double c_k_shape(double k) {
  a_result a = a_constant_auto(k, 1e-6);
  return std::exp(euler_gamma() * k * k + a.log_value -
                  38.0 * k * k * std::log(k + 1.0));
}

std::vector<moment_row> constant_set(int k_max, double tol) {
  std::vector<moment_row> rows;
  for (int k = 1; k <= k_max; ++k) {
    moment_row row;
    row.k = k;
    a_result a = a_constant_auto(k, tol);
    row.a_k = a.value;
    row.a_tail = a.tail_bound;
    row.f_k = f_constant(k);
    row.C_k = row.a_k * row.f_k;
    row.c_k = c_k_shape(k);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zetalab
