#include "zetalab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "zetalab/accum.hpp"
#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/mc.hpp"
#include "zetalab/stats.hpp"

namespace zetalab {

namespace {

struct kahan_complex {
  kahan_sum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// n^{-sigma - i tau} from precomputed log n
inline std::complex<double> power_term_c(double logn, double sigma, double tau) {
  double r = std::exp(-sigma * logn);
  double ph = tau * logn;
  return {r * std::cos(ph), -r * std::sin(ph)};
}

}  // namespace

zeta_table make_zeta_table(double sigma, double T_context) {
  if (!(T_context >= 1.0))
    throw config_error("zeta table: need a context height T >= 1");
  double Nd = std::ceil(T_context);
  if (Nd > 2e8)
    throw budget_error("zeta table: cutoff beyond the 2e8-term budget");
  zeta_table zt;
  zt.sigma = sigma;
  zt.N = static_cast<std::size_t>(Nd);
  zt.logn.resize(zt.N);
  zt.npow.resize(zt.N);
  for (std::size_t n = 1; n <= zt.N; ++n) {
    zt.logn[n - 1] = std::log(static_cast<double>(n));
    zt.npow[n - 1] = std::exp(-sigma * zt.logn[n - 1]);
  }
  return zt;
}

std::complex<double> zeta_eval(const zeta_table& zt, double tau) {
  kahan_complex acc;
  for (std::size_t i = 0; i < zt.N; ++i) {
    double ph = tau * zt.logn[i];
    // gcc folds the cos/sin pair into one sincos call
    acc.add({zt.npow[i] * std::cos(ph), -zt.npow[i] * std::sin(ph)});
  }
  return acc.value();
}

std::complex<double> zeta_em_oracle(double sigma, double tau) {
  // cutoff ~ 3|tau| with a floor of 200: the first omitted correction (B6)
  // is of order |s|^5 N^{-sigma-5}/30240, far below the tolerances used here
  double at = std::abs(tau);
  std::size_t N =
      static_cast<std::size_t>(std::ceil(std::max(3.0 * at, 200.0)));
  std::complex<double> s(sigma, tau);
  kahan_complex acc;
  for (std::size_t n = 1; n <= N; ++n)
    acc.add(power_term_c(std::log(static_cast<double>(n)), sigma, tau));
  double Nd = static_cast<double>(N);
  std::complex<double> Nms = power_term_c(std::log(Nd), sigma, tau);
  std::complex<double> res = acc.value();
  res += Nms * Nd / (s - 1.0);  // integral tail N^{1-s}/(s-1)
  res -= 0.5 * Nms;
  res += s * Nms / (12.0 * Nd);  // B2 term
  res -= s * (s + 1.0) * (s + 2.0) * Nms / (720.0 * Nd * Nd * Nd);  // B4 term
  return res;
}

namespace {

double interval_sum_real(const prime_table& tab, double lo, double hi,
                         double sigma, double tau) {
  auto [i0, i1] = tab.range(lo, hi);
  kahan_sum acc;
  for (std::size_t i = i0; i < i1; ++i) {
    double lp = tab.logs[i];
    double pw = std::exp(-sigma * lp);
    double ph = tau * lp;
    acc.add(pw * std::cos(ph) + 0.5 * pw * pw * std::cos(2.0 * ph));
  }
  return acc.value();
}

}  // namespace

std::complex<double> s_tilde_interval(const prime_table& tab, double lo,
                                      double hi, double sigma, double tau) {
  auto [i0, i1] = tab.range(lo, hi);
  kahan_complex acc;
  for (std::size_t i = i0; i < i1; ++i) {
    double lp = tab.logs[i];
    double pw = std::exp(-sigma * lp);
    double ph = tau * lp;
    acc.add({pw * std::cos(ph) + 0.5 * pw * pw * std::cos(2.0 * ph),
             -(pw * std::sin(ph) + 0.5 * pw * pw * std::sin(2.0 * ph))});
  }
  return acc.value();
}

double s_ell(const prime_table& tab, const ladder& lad, int ell, double tau) {
  if (ell < 0 || ell > lad.L) throw config_error("s_ell: level out of range");
  if (ell == 0) return 0.0;
  double T0 = lad.T0(), Tl = lad.T_level(ell);
  if (!(std::isfinite(Tl)) || static_cast<double>(tab.limit) < Tl)
    throw budget_error("s_ell: prime table does not reach T_ell");
  return interval_sum_real(tab, T0, Tl, lad.sigma, tau);
}

std::complex<double> s_tilde(const prime_table& tab, const ladder& lad, int ell,
                             double tau) {
  if (ell < 0 || ell > lad.L)
    throw config_error("s_tilde: level out of range");
  if (ell == 0) return {0.0, 0.0};
  double T0 = lad.T0(), Tl = lad.T_level(ell);
  if (!(std::isfinite(Tl)) || static_cast<double>(tab.limit) < Tl)
    throw budget_error("s_tilde: prime table does not reach T_ell");
  return s_tilde_interval(tab, T0, Tl, lad.sigma, tau);
}

std::complex<double> m0_eval(const prime_table& tab, double T0, double sigma,
                             double tau) {
  if (static_cast<double>(tab.limit) < T0)
    throw budget_error("m0_eval: prime table does not reach T_0");
  auto [i0, i1] = tab.range(0.0, T0);
  std::complex<double> prod(1.0, 0.0);
  for (std::size_t i = i0; i < i1; ++i)
    prod *= 1.0 - power_term_c(tab.logs[i], sigma, tau);
  return prod;
}

std::complex<double> m0_eval_moebius(const prime_table& tab, double T0,
                                     double sigma, double tau) {
  if (static_cast<double>(tab.limit) < T0)
    throw budget_error("m0 oracle: prime table does not reach T_0");
  auto [i0, i1] = tab.range(0.0, T0);
  std::size_t np = i1 - i0;
  // 2^np squarefree smooth terms; keep the enumeration below the 1e7 cap
  if (np > 23)
    throw budget_error("m0 oracle: smooth enumeration beyond the 1e7 cap");
  kahan_complex acc;
  std::function<void(std::size_t, double, int)> rec =
      [&](std::size_t i, double logm, int sign) {
        acc.add(static_cast<double>(sign) * power_term_c(logm, sigma, tau));
        for (std::size_t j = i; j < i1; ++j)
          rec(j + 1, logm + tab.logs[j], -sign);
      };
  rec(i0, 0.0, 1);
  return acc.value();
}

mollifier_support build_support(const prime_table& tab, double lo, double hi,
                                int max_factors) {
  if (static_cast<double>(tab.limit) < hi)
    throw budget_error("mollifier support: prime table does not reach T_ell");
  auto [i0, i1] = tab.range(lo, hi);
  std::size_t np = i1 - i0;
  if (max_factors < 0) max_factors = 0;
  int depth_cap = std::min<long long>(max_factors, static_cast<long long>(np));

  // entry count = sum_{j <= cap} C(np, j); refuse before allocating
  const double cap = 1e7;
  double count = 0.0, binom = 1.0;
  for (int j = 0; j <= depth_cap; ++j) {
    count += binom;
    if (count > cap)
      throw budget_error("mollifier support: enumeration beyond the 1e7 cap");
    binom *= static_cast<double>(np - j) / static_cast<double>(j + 1);
  }

  mollifier_support sup;
  sup.cap_mu = max_factors;
  sup.logm.reserve(static_cast<std::size_t>(count));
  sup.sign.reserve(static_cast<std::size_t>(count));
  std::function<void(std::size_t, double, int, int)> rec =
      [&](std::size_t i, double logm, int sign, int depth) {
        sup.logm.push_back(logm);
        sup.sign.push_back(sign);
        if (depth == depth_cap) return;
        for (std::size_t j = i; j < i1; ++j)
          rec(j + 1, logm + tab.logs[j], -sign, depth + 1);
      };
  rec(i0, 0.0, 1, 0);

  std::vector<std::size_t> order(sup.logm.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sup.logm[a] < sup.logm[b];
  });
  mollifier_support sorted;
  sorted.cap_mu = sup.cap_mu;
  sorted.logm.reserve(order.size());
  sorted.sign.reserve(order.size());
  for (std::size_t k : order) {
    sorted.logm.push_back(sup.logm[k]);
    sorted.sign.push_back(sup.sign[k]);
  }
  return sorted;
}

mollifier_support mollifier_support_level(const prime_table& tab,
                                          const ladder& lad, int ell) {
  if (ell < 1 || ell > lad.L)
    throw config_error("mollifier support: level out of range");
  double lo = lad.T_level(ell - 1), hi = lad.T_level(ell);
  if (!std::isfinite(hi))
    throw infeasible_error("mollifier support: T_ell beyond double range");
  int mf = static_cast<int>(std::floor(lad.mu[ell - 1]));
  mollifier_support sup = build_support(tab, lo, hi, mf);
  sup.level = ell;
  sup.cap_mu = lad.mu[ell - 1];
  return sup;
}

std::complex<double> mollifier_eval(const mollifier_support& sup, double sigma,
                                    double tau) {
  kahan_complex acc;
  for (std::size_t k = 0; k < sup.logm.size(); ++k)
    acc.add(static_cast<double>(sup.sign[k]) *
            power_term_c(sup.logm[k], sigma, tau));
  return acc.value();
}

mollifier_total_result mollifier_total(const prime_table& tab,
                                       const ladder& lad, double tau) {
  mollifier_total_result res;
  std::complex<double> m = m0_eval(tab, lad.T0(), lad.sigma, tau);
  // log of prod T_ell^{mu_ell} = sum mu_ell e^{t_ell}, against (log T)/100
  double len_log = 0.0;
  for (int ell = 1; ell <= lad.L; ++ell) {
    mollifier_support sup = mollifier_support_level(tab, lad, ell);
    m *= mollifier_eval(sup, lad.sigma, tau);
    len_log += lad.mu[ell - 1] * std::exp(lad.t_level(ell));
  }
  res.value = m;
  res.length_ok = len_log <= std::exp(lad.t) / 100.0;
  return res;
}

residual_report molli_residual(const prime_table& tab, double lo, double hi,
                               double sigma, double tau, double mu, double A,
                               double dt) {
  residual_report rep;
  std::complex<double> inc_c = s_tilde_interval(tab, lo, hi, sigma, tau);
  rep.hypothesis_met = std::abs(inc_c) <= A * dt;
  rep.increment = interval_sum_real(tab, lo, hi, sigma, tau);
  rep.envelope_e = std::exp(-rep.increment);
  mollifier_support sup =
      build_support(tab, lo, hi, static_cast<int>(std::floor(mu)));
  rep.residual = std::abs(mollifier_eval(sup, sigma, tau)) - rep.envelope_e;
  rep.mult_band = 5.0 / std::sqrt(lo) * rep.envelope_e;
  rep.additive = std::exp(-mu + 5.0 * (A + 1.0) * dt + 1.0);
  rep.within = std::abs(rep.residual) <= rep.mult_band + rep.additive;
  return rep;
}

mean_value_report mean_value_check(const std::vector<double>& coeffs, double T,
                                   std::size_t n_samples, uint64_t seed,
                                   int workers) {
  std::size_t N = coeffs.size();
  if (N == 0) throw config_error("mean value: empty coefficient vector");
  if (static_cast<double>(N) > T / 10.0)
    throw config_error("mean value: need polynomial length <= T/10");
  if (n_samples < 2) throw config_error("mean value: need n >= 2");
  std::vector<double> logn(N);
  for (std::size_t k = 0; k < N; ++k)
    logn[k] = std::log(static_cast<double>(k + 1));
  kahan_sum rhs_acc;
  for (double a : coeffs) rhs_acc.add(a * a);
  double rhs = rhs_acc.value();
  if (!(rhs > 0.0)) throw config_error("mean value: zero polynomial");

  auto fn = [&](std::size_t i, double* out) {
    rng_stream r(seed, i);
    double tau = T * (1.0 + r.uniform(lane_tau, 0));
    kahan_sum re, im;
    for (std::size_t k = 0; k < N; ++k) {
      if (coeffs[k] == 0.0) continue;
      double ph = tau * logn[k];
      re.add(coeffs[k] * std::cos(ph));
      im.add(coeffs[k] * std::sin(ph));
    }
    double x = re.value() * re.value() + im.value() * im.value();
    out[0] = x;
    out[1] = x * x;
  };
  block_stats bs = mc_blocks(n_samples, 2, fn, workers);
  std::vector<double> tot = mc_totals(bs);
  double nd = static_cast<double>(n_samples);
  mean_value_report rep;
  rep.mc = tot[0] / nd;
  double var = std::max(0.0, (tot[1] - nd * rep.mc * rep.mc) / (nd - 1.0));
  rep.se = std::sqrt(var / nd);
  rep.rhs = rhs;
  rep.rel_err = std::abs(rep.mc - rhs) / rhs;
  rep.tol = std::max(3.0 * rep.se / rhs, 5.0 * static_cast<double>(N) / T);
  rep.ok = rep.rel_err <= rep.tol;
  return rep;
}

good_event_report good_event_zeta(const prime_table& tab, const ladder& lad,
                                  double tau, double V) {
  good_event_report g;
  g.tau = tau;
  std::complex<double> m0 = m0_eval(tab, lad.T0(), lad.sigma, tau);
  g.y0 = std::norm(m0);
  g.m0_log = -0.5 * std::log(g.y0);  // log |M_0|^{-1}
  g.s0 = 0.5 * g.m0_log;            // -(1/2) log |M_0|
  barrier fb = first_barrier(lad);
  g.window_ok = g.y0 >= fb.lower && g.y0 <= fb.upper;
  g.s.assign(static_cast<std::size_t>(lad.L) + 1, 0.0);
  bool bars = true;
  for (int ell = 1; ell <= lad.L; ++ell) {
    double inc = interval_sum_real(tab, lad.T_level(ell - 1), lad.T_level(ell),
                                   lad.sigma, tau);
    g.s[ell] = g.s[ell - 1] + inc;
    barrier br = barriers(lad, ell, g.s0);
    if (!(g.s[ell] >= br.lower && g.s[ell] <= br.upper)) bars = false;
  }
  g.barriers_ok = bars;
  g.exceed_ok = g.m0_log + g.s[lad.L] > V;
  g.good = g.window_ok && g.barriers_ok && g.exceed_ok;
  return g;
}

tail_estimate empirical_tail(const zeta_table& zt, double T, double V,
                             double delta, std::size_t n, uint64_t seed,
                             int workers) {
  if (n < 100) throw config_error("empirical tail: need n >= 100");
  tail_estimate te;
  te.T = T;
  te.sigma = zt.sigma;
  te.V = V;
  te.n = n;
  double t = iter_log(T, 2);
  auto fn = [&](std::size_t i, double* out) {
    rng_stream r(seed, i);
    double tau = T * (1.0 + r.uniform(lane_tau, 0));
    std::complex<double> z = zeta_eval(zt, tau);
    out[0] = 0.5 * std::log(std::norm(z)) > V ? 1.0 : 0.0;
  };
  block_stats bs = mc_blocks(n, 1, fn, workers);
  te.hits = static_cast<std::size_t>(std::llround(mc_totals(bs)[0]));
  proportion pr = make_proportion(te.hits, n);
  te.p_hat = pr.p_hat;
  te.se = pr.se;
  double alpha = V > 0.0 ? V / t : 0.0;
  te.prediction = c_alpha_constant(alpha, delta) * gaussian_tail(V, t / 2.0);
  te.ratio = te.prediction > 0.0 ? te.p_hat / te.prediction : 0.0;
  return te;
}

mollification_report mollification_check(const prime_table& tab,
                                         const ladder& lad, double T,
                                         std::size_t n, uint64_t seed,
                                         int workers) {
  if (n < 2) throw config_error("mollification check: need n >= 2");
  mollification_report rep;
  rep.delta = lad.delta;
  zeta_table zt = make_zeta_table(lad.sigma, T);
  std::vector<mollifier_support> sups;
  for (int ell = 1; ell <= lad.L; ++ell)
    sups.push_back(mollifier_support_level(tab, lad, ell));
  double T0 = lad.T0();
  auto fn = [&](std::size_t i, double* out) {
    rng_stream r(seed, i);
    double tau = T * (1.0 + r.uniform(lane_tau, 0));
    std::complex<double> m = m0_eval(tab, T0, lad.sigma, tau);
    for (const mollifier_support& sup : sups)
      m *= mollifier_eval(sup, lad.sigma, tau);
    double x = std::norm(zeta_eval(zt, tau) * m - 1.0);
    out[0] = x;
    out[1] = x * x;
  };
  block_stats bs = mc_blocks(n, 2, fn, workers);
  std::vector<double> tot = mc_totals(bs);
  double nd = static_cast<double>(n);
  rep.estimate = tot[0] / nd;
  double var = std::max(0.0, (tot[1] - nd * rep.estimate * rep.estimate) / (nd - 1.0));
  rep.se = std::sqrt(var / nd);
  double mu_tail = lad.mu.empty() ? 0.0 : std::exp(-lad.mu.back() / 10.0);
  rep.bound_shape = std::exp(-2.0 * lad.delta) / lad.delta + mu_tail;
  return rep;
}

}  // namespace zetalab
