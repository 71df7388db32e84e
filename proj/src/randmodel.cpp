#include "zetalab/randmodel.hpp"

#include <cmath>

#include "zetalab/accum.hpp"
#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"

namespace zetalab {

double theta(const rng_stream& r, uint64_t prime_index) {
  return 2.0 * M_PI * r.uniform(lane_phase, prime_index);
}

namespace {

// series depth so that p^{-k sigma}/k < 1e-15
int k_cutoff(double logp, double sigma) {
  int k = static_cast<int>(std::ceil(34.54 / (sigma * logp)));
  return std::max(k, 2);
}

}  // namespace

double z0_sample(const prime_table& tab, double T0, double sigma,
                 const rng_stream& r) {
  auto [a, b] = tab.range(0.0, T0);
  (void)a;
  kahan_sum acc;
  for (size_t i = 0; i < b; ++i) {
    double th = theta(r, i);
    double c1 = std::cos(th);
    double x = std::exp(-sigma * tab.logs[i]);
    // Chebyshev recurrence: cos(k th) = 2 cos(th) cos((k-1)th) - cos((k-2)th)
    double ckm1 = c1, ckm2 = 1.0, xk = x;
    int K = k_cutoff(tab.logs[i], sigma);
    acc.add(c1 * x);
    for (int k = 2; k <= K; ++k) {
      double ck = 2.0 * c1 * ckm1 - ckm2;
      ckm2 = ckm1;
      ckm1 = ck;
      xk *= x;
      acc.add(ck * xk / k);
    }
  }
  return acc.value();
}

model_sample concrete_sample(const prime_table& tab, const ladder& lad,
                             const rng_stream& r) {
  double TL = lad.T_level(lad.L);
  if (!(TL <= static_cast<double>(tab.limit)))
    throw budget_error("concrete_sample: T_L exceeds the sieved table");
  model_sample ms;
  double T0 = lad.T_level(0);
  ms.z0 = z0_sample(tab, T0, lad.sigma, r);
  ms.y0 = std::exp(-2.0 * ms.z0);
  ms.s.resize(static_cast<size_t>(lad.L));
  ms.y.resize(static_cast<size_t>(lad.L));
  double prev = 0.0;
  for (int ell = 1; ell <= lad.L; ++ell) {
    auto [a, b] = tab.range(lad.T_level(ell - 1), lad.T_level(ell));
    kahan_sum acc;
    for (size_t i = a; i < b; ++i) {
      double th = theta(r, i);
      double c1 = std::cos(th);
      double x = std::exp(-lad.sigma * tab.logs[i]);
      acc.add(c1 * x + (2.0 * c1 * c1 - 1.0) * x * x / 2.0);
    }
    ms.y[static_cast<size_t>(ell) - 1] = acc.value();
    prev += acc.value();
    ms.s[static_cast<size_t>(ell) - 1] = prev;
  }
  return ms;
}

model_sample surrogate_sample(const ladder& lad, const rng_stream& r) {
  std::vector<double> v2 = variance_ladder_surrogate(lad);
  model_sample ms;
  ms.z0 = std::sqrt(v2[0]) * r.normal(lane_gauss, 0);
  ms.y0 = std::exp(-2.0 * ms.z0);
  ms.s.resize(static_cast<size_t>(lad.L));
  ms.y.resize(static_cast<size_t>(lad.L));
  double prev = 0.0, prev_v2 = 0.0;
  for (int ell = 1; ell <= lad.L; ++ell) {
    double dv = v2[static_cast<size_t>(ell)] - prev_v2;
    if (!(dv > 0.0))
      throw infeasible_error("surrogate_sample: nonpositive increment variance");
    double inc = std::sqrt(dv) * r.normal(lane_gauss, static_cast<uint64_t>(ell));
    ms.y[static_cast<size_t>(ell) - 1] = inc;
    prev += inc;
    ms.s[static_cast<size_t>(ell) - 1] = prev;
    prev_v2 = v2[static_cast<size_t>(ell)];
  }
  return ms;
}

std::vector<double> variance_ladder_concrete(const prime_table& tab,
                                             const ladder& lad) {
  std::vector<double> v2(static_cast<size_t>(lad.L) + 1);
  double T0 = lad.T_level(0);
  v2[0] = prime_power_sum(tab, 0.0, T0,
                          {{0.5, 2.0 * lad.sigma}, {0.125, 4.0 * lad.sigma}});
  for (int ell = 1; ell <= lad.L; ++ell)
    v2[static_cast<size_t>(ell)] =
        prime_power_sum(tab, T0, lad.T_level(ell),
                        {{0.5, 2.0 * lad.sigma}, {0.125, 4.0 * lad.sigma}});
  return v2;
}

std::vector<double> variance_ladder_surrogate(const ladder& lad) {
  std::vector<double> v2(static_cast<size_t>(lad.L) + 1);
  v2[0] = lad.t0 / 2.0;
  double tL = lad.levels.back();
  for (int ell = 1; ell <= lad.L; ++ell) {
    double te = lad.t_level(ell);
    v2[static_cast<size_t>(ell)] =
        0.5 * (te - lad.t0) - lad.delta * std::exp(te - tL);
    if (!(v2[static_cast<size_t>(ell)] > 0.0))
      throw infeasible_error(
          "variance_ladder_surrogate: analytic variance nonpositive at level " +
          std::to_string(ell));
  }
  return v2;
}

double exact_z0_moment(const prime_table& tab, double T0, double k,
                       double sigma) {
  if (!(k >= 0.0)) throw config_error("exact_z0_moment: need k >= 0");
  auto [a, b] = tab.range(0.0, T0);
  (void)a;
  kahan_sum lg;
  for (size_t i = 0; i < b; ++i) {
    double x = std::exp(-2.0 * sigma * tab.logs[i]);
    double S = 1.0, d = 1.0, term = 1.0;
    bool converged = false;
    for (int m = 1; m < 4000; ++m) {
      d *= (k + m - 1.0) / m;
      double next = d * d * std::pow(x, m);
      if (m > 8 && next >= term)
        throw budget_error("exact_z0_moment: series not contracting");
      term = next;
      S += term;
      if (term < 1e-12 * S) {
        // geometric majorant on the rest: ratio bounded by r = term_{m+1}/term_m
        double r = ((k + m) / (m + 1.0)) * ((k + m) / (m + 1.0)) * x;
        if (r < 1.0 && term * r / (1.0 - r) < 1e-10 * S) {
          converged = true;
          break;
        }
      }
    }
    if (!converged)
      throw budget_error("exact_z0_moment: tail bound unattained at p = " +
                         std::to_string(tab.primes[i]));
    lg.add(std::log(S));
  }
  return std::exp(lg.value());
}

double mgf_exact_log(const prime_table& tab, double lo, double hi,
                     double lambda, double a, double sigma) {
  auto [ia, ib] = tab.range(lo, hi);
  kahan_sum acc;
  for (size_t i = ia; i < ib; ++i)
    acc.add(bessel_i0_log(lambda * std::abs(a) * std::exp(-sigma * tab.logs[i])));
  return acc.value();
}

double mgf_draw(const prime_table& tab, double lo, double hi, double lambda,
                double a, double sigma, const rng_stream& r) {
  auto [ia, ib] = tab.range(lo, hi);
  kahan_sum acc;
  for (size_t i = ia; i < ib; ++i)
    acc.add(std::cos(theta(r, i)) * std::exp(-sigma * tab.logs[i]));
  return std::exp(lambda * a * acc.value());
}

double even_moment_bound(int q, double s) {
  if (q < 0) throw config_error("even_moment_bound: need q >= 0");
  // (2q)!/(2^q q!) = prod_{j<=q} (2j-1)
  double b = 1.0;
  for (int j = 1; j <= q; ++j) b *= 2.0 * j - 1.0;
  return b * std::pow(s, 2 * q);
}

double markov_z0_bound(const prime_table& tab, double T0, double alpha,
                       double sigma) {
  double m = exact_z0_moment(tab, T0, alpha, sigma);
  return m * std::pow(std::log(T0), -2.0 * alpha * alpha);
}

bool within_barriers(const ladder& lad, const std::vector<double>& s, double z) {
  for (int ell = 1; ell <= lad.L; ++ell) {
    barrier b = barriers(lad, ell, z);
    double se = s[static_cast<size_t>(ell) - 1];
    if (se < b.lower || se > b.upper) return false;
  }
  return true;
}

bool good_zero(const ladder& lad, double z0) {
  double d = z0 - lad.alpha * lad.t0;
  return d >= 0.0 && d <= std::sqrt(lad.t0);
}

bool good_event(const ladder& lad, const model_sample& ms, double V) {
  return good_zero(lad, ms.z0) && within_barriers(lad, ms.s, ms.z0) &&
         ms.z0 + ms.s.back() > V;
}

}  // namespace zetalab
