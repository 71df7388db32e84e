#include "zetalab/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {
constexpr double kE = 2.718281828459045235;
// Largest x with exp(exp(x)) finite in double.
constexpr double kMaxConcreteT = 6.5;
}  // namespace

double iter_log(double x, int k) {
  for (int i = 0; i < k; ++i) {
    if (!(x > 0.0))
      throw std::domain_error("iter_log: nonpositive intermediate at depth " +
                              std::to_string(i));
    x = std::log(x);
  }
  return x;
}

double s_condition_lhs(double s, double logL_t, double a_const) {
  double x = s * logL_t;
  if (!(x > 0.0)) return -1e300;
  return x - 7.0 * a_const * std::log(x);
}

double s_condition_rhs(double alpha, double a_const, double K_const) {
  return 7.0 * a_const * std::log(std::max(alpha, 1.0)) + std::log(K_const);
}

std::optional<double> derive_s(double logL_t, double alpha, double a_const,
                               double K_const) {
  if (!(logL_t > 0.0)) return std::nullopt;
  const double rhs = s_condition_rhs(alpha, a_const, K_const);
  // g(x) = x - 7a log x is increasing for x > 7a and g(7a) < rhs, so the
  // smallest admissible x on this branch is the unique root of g(x) = rhs.
  auto g = [&](double x) { return x - 7.0 * a_const * std::log(x); };
  double lo = 7.0 * a_const;
  double hi = lo;
  while (g(hi) <= rhs) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) > rhs ? hi : lo) = mid;
  }
  return hi / logL_t;  // upper end: strictly satisfies the condition
}

double ladder::t_level(int ell) const {
  if (ell == 0) return t0;
  return levels.at(static_cast<size_t>(ell) - 1);
}

double ladder::T_level(int ell) const {
  double te = t_level(ell);
  if (te > kMaxConcreteT) return std::numeric_limits<double>::infinity();
  return std::exp(std::exp(te));
}

namespace {

int derived_level_count(double t) {
  // Largest L >= 1 with log_{L-1}(t) > e; fails for t <= e.
  int L = 0;
  double v = t;
  while (v > kE && L < 8) {
    ++L;
    v = std::log(v);
  }
  return L;
}

void append_check(ladder& lad, const std::string& name, bool holds,
                  std::string detail) {
  lad.validation.push_back({name, holds, std::move(detail)});
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

ladder build_ladder(const ladder_config& cfg) {
  if (!(cfg.alpha > 0.0)) throw config_error("alpha must be positive");
  if (!(cfg.delta > 0.0)) throw config_error("delta must be positive");
  if (cfg.s_exponent && !(*cfg.s_exponent > 0.0))
    throw config_error("s_exponent must be positive when given");

  ladder lad;
  lad.alpha = cfg.alpha;
  lad.delta = cfg.delta;

  bool derived_levels = false;
  switch (cfg.mode) {
    case ladder_mode::from_T: {
      if (!(cfg.T > 0.0)) throw config_error("from_T mode requires T > 0");
      if (cfg.T > 1e15)
        throw config_error("from_T mode is capped at T = 1e15; use from_t");
      lad.has_T = true;
      lad.T = cfg.T;
      try {
        lad.t = iter_log(cfg.T, 2);
      } catch (const std::domain_error&) {
        throw infeasible_error("T too small: log log T undefined");
      }
      derived_levels = true;
      break;
    }
    case ladder_mode::from_t: {
      if (!(cfg.t > 0.0)) throw config_error("from_t mode requires t > 0");
      lad.t = cfg.t;
      derived_levels = true;
      break;
    }
    case ladder_mode::explicit_levels: {
      if (cfg.explicit_levels.empty())
        throw config_error("explicit_levels mode requires at least one level");
      if (!cfg.explicit_t0)
        throw config_error("explicit_levels mode requires explicit_t0");
      if (!(cfg.t > 0.0))
        throw config_error("explicit_levels mode requires t > 0");
      if (!std::is_sorted(cfg.explicit_levels.begin(), cfg.explicit_levels.end()))
        throw config_error("explicit levels must be increasing");
      lad.t = cfg.t;
      lad.levels = cfg.explicit_levels;
      lad.L = static_cast<int>(lad.levels.size());
      break;
    }
  }

  if (derived_levels) {
    lad.L = derived_level_count(lad.t);
    if (lad.L < 1)
      throw infeasible_error("t <= e: no level satisfies the iterated-log rule");
  }

  if (cfg.explicit_t0) {
    lad.t0 = *cfg.explicit_t0;
  } else {
    try {
      lad.t0 = iter_log(lad.t, 2);
    } catch (const std::domain_error&) {
      throw infeasible_error("t too small to derive t0 = log log t");
    }
  }

  const double logL_t = iter_log(lad.t, lad.L);
  if (cfg.s_exponent) {
    lad.s_exponent = *cfg.s_exponent;
    lad.s_source = "explicit";
  } else {
    auto s_paper = derive_s(logL_t, lad.alpha, cfg.a_const, cfg.K_const);
    if (!s_paper)
      throw infeasible_error(
          "no s > 0 satisfies the feasibility condition: log_L(t) <= 0");
    if (!derived_levels) {
      lad.s_exponent = *s_paper;
      lad.s_source = "derived";
    } else {
      // Accept the derived exponent only if it keeps the ladder ordered at
      // this scale; otherwise fall back to a small pedagogical exponent that
      // places t_L within 0.1% of t (the failed condition shows up in the
      // validation report, never as a silent clamp).
      double t1 = lad.t - *s_paper * iter_log(lad.t, 1);
      if (t1 > lad.t0) {
        lad.s_exponent = *s_paper;
        lad.s_source = "derived";
      } else {
        lad.s_exponent = 1e-3 * (lad.t - lad.t0) / logL_t;
        lad.s_source = "pedagogical";
      }
    }
  }

  if (derived_levels) {
    lad.levels.resize(static_cast<size_t>(lad.L));
    for (int ell = 1; ell <= lad.L; ++ell)
      lad.levels[static_cast<size_t>(ell) - 1] =
          lad.t - lad.s_exponent * iter_log(lad.t, ell);
  }

  // Ordering is a hard requirement: everything downstream divides by
  // differences of consecutive scales.
  {
    double prev = lad.t0;
    for (double te : lad.levels) {
      if (!(te > prev))
        throw infeasible_error("ladder levels not increasing above t0 (t0=" +
                               fmt(lad.t0) + ")");
      prev = te;
    }
    if (!(lad.t > lad.levels.back()))
      throw infeasible_error("top level must stay below t");
  }

  const double tL = lad.levels.back();
  lad.sigma = 0.5 + lad.delta * std::exp(-tL);
  lad.B = lad.alpha * lad.s_exponent + 1.0 / lad.alpha;
  lad.C = 100.0;
  lad.delta0_log = 100.0 * lad.alpha * lad.t0;
  lad.Delta0 = std::exp(lad.delta0_log);
  lad.mu.resize(static_cast<size_t>(lad.L));
  lad.nu.resize(static_cast<size_t>(lad.L));
  lad.Delta.resize(static_cast<size_t>(lad.L));
  for (int ell = 1; ell <= lad.L; ++ell) {
    double dt = lad.t_level(ell) - lad.t_level(ell - 1);
    lad.mu[static_cast<size_t>(ell) - 1] = 100.0 * std::max(lad.alpha, 1.0) * dt;
    lad.nu[static_cast<size_t>(ell) - 1] = lad.mu[static_cast<size_t>(ell) - 1] / 10.0;
    lad.Delta[static_cast<size_t>(ell) - 1] =
        10.0 * lad.alpha * lad.s_exponent * iter_log(lad.t, ell - 1);
  }

  // ---- validation report ----
  {
    double x = lad.s_exponent * logL_t;
    double lhs = s_condition_lhs(lad.s_exponent, logL_t, cfg.a_const);
    double rhs = s_condition_rhs(lad.alpha, cfg.a_const, cfg.K_const);
    std::string branch = x >= 7.0 * cfg.a_const ? "large-branch" : "small-branch";
    append_check(lad, "eq_s", lhs > rhs,
                 "lhs=" + fmt(lhs) + " rhs=" + fmt(rhs) + " x=" + fmt(x) + " (" +
                     branch + ", s " + lad.s_source + ")");
  }
  if (derived_levels) {
    double v = iter_log(lad.t, lad.L - 1);
    append_check(lad, "level_rule", v > kE && v <= kE * kE,
                 "log_{L-1}(t)=" + fmt(v) + " target (e, e^2]");
  }
  append_check(lad, "levels_monotone", true,
               "t0=" + fmt(lad.t0) + " < t_1..t_L < t=" + fmt(lad.t));
  {
    // Mollifier length: prod_ell T_ell^{mu_ell} <= T^{1/100}, compared in
    // doubly-logarithmic form via log-sum-exp to dodge overflow.
    double m = -1e300;
    for (int ell = 1; ell <= lad.L; ++ell) m = std::max(m, lad.t_level(ell));
    double acc = 0.0;
    for (int ell = 1; ell <= lad.L; ++ell)
      acc += lad.mu[static_cast<size_t>(ell) - 1] * std::exp(lad.t_level(ell) - m);
    double lhs = m + std::log(acc);           // log(sum mu_ell log T_ell)
    double rhs = lad.t - std::log(100.0);     // log(log T / 100)
    append_check(lad, "mollifier_length", lhs < rhs,
                 "log(sum mu_l log T_l)=" + fmt(lhs) + " log(log T/100)=" + fmt(rhs));
  }
  append_check(lad, "sigma_above_half", lad.sigma > 0.5, "sigma=" + fmt(lad.sigma));
  return lad;
}

double slope(const ladder& lad, double z) {
  return (lad.alpha * lad.t - z) / (lad.levels.back() - lad.t0);
}

barrier barriers(const ladder& lad, int ell, double z) {
  if (ell < 1 || ell > lad.L) throw config_error("barrier level out of range");
  double w = iter_log(lad.t, ell);  // stand-in for log_{ell+2} T
  if (!(w > 0.0))
    throw std::domain_error("barriers: iterated log nonpositive at this scale");
  double center = slope(lad, z) * (lad.t_level(ell) - lad.t0);
  return {center - lad.C * w, center + lad.B * w};
}

barrier first_barrier(const ladder& lad) {
  double lo = std::exp(-2.0 * lad.alpha * lad.t0);
  double hi = std::exp(-2.0 * lad.alpha * lad.t0 + 2.0 * std::sqrt(lad.t0));
  return {lo, hi};
}

// ---- JSON / table ----------------------------------------------------------

ladder_config parse_ladder_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw config_error(std::string("bad ladder config JSON: ") + e.what());
  }
  ladder_config cfg;
  try {
    if (j.contains("mode")) {
      std::string m = j["mode"].get<std::string>();
      if (m == "from_T")
        cfg.mode = ladder_mode::from_T;
      else if (m == "from_t")
        cfg.mode = ladder_mode::from_t;
      else if (m == "explicit")
        cfg.mode = ladder_mode::explicit_levels;
      else
        throw config_error("unknown ladder mode: " + m);
    }
    if (j.contains("T")) cfg.T = j["T"].get<double>();
    if (j.contains("t")) cfg.t = j["t"].get<double>();
    if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
    if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
    if (j.contains("s_exponent")) cfg.s_exponent = j["s_exponent"].get<double>();
    if (j.contains("explicit_t0")) cfg.explicit_t0 = j["explicit_t0"].get<double>();
    if (j.contains("explicit_levels"))
      cfg.explicit_levels = j["explicit_levels"].get<std::vector<double>>();
    if (j.contains("a_const")) cfg.a_const = j["a_const"].get<double>();
    if (j.contains("K_const")) cfg.K_const = j["K_const"].get<double>();
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(std::string("bad ladder config field: ") + e.what());
  }
  // mode inference when omitted: explicit levels beat t beat T
  if (!j.contains("mode")) {
    if (!cfg.explicit_levels.empty())
      cfg.mode = ladder_mode::explicit_levels;
    else if (cfg.t > 0.0)
      cfg.mode = ladder_mode::from_t;
  }
  return cfg;
}

std::string ladder_json(const ladder& lad) {
  nlohmann::json j;
  j["alpha"] = lad.alpha;
  j["delta"] = lad.delta;
  j["t"] = lad.t;
  j["t0"] = lad.t0;
  j["levels"] = lad.levels;
  j["L"] = lad.L;
  j["s_exponent"] = lad.s_exponent;
  j["s_source"] = lad.s_source;
  if (lad.has_T) j["T"] = lad.T;
  j["sigma"] = lad.sigma;
  j["B"] = lad.B;
  j["C"] = lad.C;
  j["mu"] = lad.mu;
  j["nu"] = lad.nu;
  j["delta0_log"] = lad.delta0_log;
  j["Delta"] = lad.Delta;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : lad.validation)
    checks.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
  j["validation"] = checks;
  return j.dump(2);
}

std::string ladder_table(const ladder& lad) {
  std::ostringstream os;
  os.precision(8);
  auto row = [&os](const std::string& k, double v) { os << k << "\t" << v << "\n"; };
  row("alpha", lad.alpha);
  row("delta", lad.delta);
  if (lad.has_T) row("T", lad.T);
  row("t", lad.t);
  row("t0", lad.t0);
  os << "L\t" << lad.L << "\n";
  for (int ell = 1; ell <= lad.L; ++ell)
    row("t_" + std::to_string(ell), lad.t_level(ell));
  row("s_exponent", lad.s_exponent);
  os << "s_source\t" << lad.s_source << "\n";
  row("sigma", lad.sigma);
  row("B", lad.B);
  row("C", lad.C);
  for (int ell = 1; ell <= lad.L; ++ell)
    row("mu_" + std::to_string(ell), lad.mu[static_cast<size_t>(ell) - 1]);
  for (int ell = 1; ell <= lad.L; ++ell)
    row("nu_" + std::to_string(ell), lad.nu[static_cast<size_t>(ell) - 1]);
  row("log_Delta0", lad.delta0_log);
  for (int ell = 1; ell <= lad.L; ++ell)
    row("Delta_" + std::to_string(ell), lad.Delta[static_cast<size_t>(ell) - 1]);
  for (const auto& c : lad.validation)
    os << "check:" << c.name << "\t" << (c.holds ? "ok" : "FAIL") << "\t" << c.detail
       << "\n";
  return os.str();
}

}  // namespace zetalab
