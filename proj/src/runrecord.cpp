// Experiment records and the two self-contained experiments (moments of
// |zeta| and barrier events on the Gaussian surrogate).  See runrecord.hpp
// for the determinism and schema contracts.

#include "zetalab/runrecord.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/mc.hpp"
#include "zetalab/randmodel.hpp"
#include "zetalab/rng.hpp"
#include "zetalab/stats.hpp"

namespace zetalab {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string build_identifier() {
  return std::string("zetalab 0.1.0 (") + __VERSION__ + ")";
}

void append_check(run_record& rec, const std::string& name, bool pass,
                  const std::string& detail) {
  nlohmann::json c;
  c["name"] = name;
  c["pass"] = pass;
  if (!detail.empty()) c["detail"] = detail;
  rec.checks.push_back(c);
}

bool checks_pass(const run_record& rec) {
  for (const auto& c : rec.checks)
    if (!c.value("pass", false)) return false;
  return true;
}

nlohmann::json record_json(const run_record& rec) {
  nlohmann::json j;
  j["subcommand"] = rec.subcommand;
  j["build_id"] = rec.build_id;
  j["wall_seconds"] = rec.wall_seconds;
  j["config"] = rec.config;
  j["payload"] = rec.payload;
  j["checks"] = rec.checks;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open output file: " + path);
  out << text;
  if (!out) throw config_error("write failed: " + path);
}

std::string tail_csv_header() {
  return "T,sigma,V,n,hits,p_hat,se,prediction,ratio\n";
}

std::string tail_csv_row(const tail_estimate& te) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n",
                te.T, te.sigma, te.V, te.n, te.hits, te.p_hat, te.se,
                te.prediction, te.ratio);
  return buf;
}

std::string kernel_csv(const sandwich_report& rep) {
  std::string out = "x,h_minus,h_plus,d_minus_sq,d_plus_sq\n";
  char buf[256];
  for (const sandwich_row& r : rep.rows) {
    if (r.d_valid)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.x,
                    r.h_minus, r.h_plus, r.d_minus_sq, r.d_plus_sq);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,nan,nan\n", r.x,
                    r.h_minus, r.h_plus);
    out += buf;
  }
  return out;
}

run_record moments_experiment(double T, double k, std::size_t n,
                              uint64_t seed, int workers) {
  if (!(T >= 100.0)) throw config_error("moments: need T >= 100");
  if (T > 1e6) throw budget_error("moments: default budget is T <= 1e6");
  if (k < 0.0) throw config_error("moments: need k >= 0");
  if (n < 100) throw config_error("moments: need n >= 100");
  if (workers < 1) throw config_error("moments: need workers >= 1");

  auto start = std::chrono::steady_clock::now();
  run_record rec;
  rec.subcommand = "moments";
  rec.build_id = build_identifier();
  rec.config = {{"T", T},       {"k", k},           {"n", n},
                {"seed", seed}, {"workers", workers}};

  zeta_table zt = make_zeta_table(0.5, T);
  auto fn = [&](std::size_t i, double* out) {
    rng_stream r(seed, i);
    double tau = T * (1.0 + r.uniform(lane_tau, 0));
    double a2 = std::norm(zeta_eval(zt, tau));
    double v = std::pow(a2, k);
    out[0] = v;
    out[1] = v * v;
  };
  block_stats bs = mc_blocks(n, 2, fn, workers);
  std::vector<double> tot = mc_totals(bs);
  double mean = tot[0] / double(n);
  double var = std::max(0.0, tot[1] / double(n) - mean * mean) *
               double(n) / double(n - 1);
  double se = std::sqrt(var / double(n));

  a_result ak = a_constant_auto(k, 1e-8);
  double fk = k == std::floor(k) ? f_constant(int(k)) : 0.0;
  double scale = std::pow(std::log(T), k * k);
  double pred_ck = ak.value * fk * scale;
  double pred_shape = c_k_shape(k) * scale;

  rec.payload = {{"estimate", mean},
                 {"se", se},
                 {"a_k", ak.value},
                 {"f_k", fk},
                 {"C_k", ak.value * fk},
                 {"c_k_shape", c_k_shape(k)},
                 {"prediction", pred_ck},
                 {"prediction_shape", pred_shape},
                 {"ratio", pred_ck > 0.0 ? mean / pred_ck : 0.0},
                 {"ratio_shape", pred_shape > 0.0 ? mean / pred_shape : 0.0}};

  if (k == 0.0)
    append_check(rec, "zeroth moment exactly one", mean == 1.0,
                 fmt("estimate %.17g", mean));
  if (k == 1.0) {
    double ratio = mean / pred_ck;
    append_check(rec, "second-moment ratio in [0.8, 1.25]",
                 ratio >= 0.8 && ratio <= 1.25, fmt("ratio %.6g", ratio));
  }

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rec;
}

model_event parse_model_event(const std::string& name) {
  if (name == "gauss-tail") return model_event::gauss_tail;
  if (name == "barrier") return model_event::barrier;
  if (name == "window") return model_event::window;
  if (name == "good") return model_event::good;
  throw config_error("unknown event: " + name +
                     " (expected gauss-tail | barrier | window | good)");
}

run_record model_experiment(const ladder& lad, model_event ev, double V,
                            std::size_t n, uint64_t seed, int workers) {
  if (n < 100) throw config_error("model: need n >= 100");
  if (workers < 1) throw config_error("model: need workers >= 1");

  auto start = std::chrono::steady_clock::now();
  run_record rec;
  rec.subcommand = "model";
  rec.build_id = build_identifier();
  const char* names[] = {"gauss-tail", "barrier", "window", "good"};
  rec.config = {{"event", names[int(ev)]}, {"V", V},
                {"n", n},                  {"seed", seed},
                {"workers", workers},      {"ladder", nlohmann::json::parse(
                                               ladder_json(lad))}};

  const int L = lad.L;
  // accumulands: hit, then per level (S_l, below-lower, above-upper)
  const std::size_t dim = 1 + 3 * std::size_t(L);
  auto fn = [&](std::size_t i, double* out) {
    rng_stream r(seed, i);
    model_sample ms = surrogate_sample(lad, r);
    bool hit = false;
    switch (ev) {
      case model_event::gauss_tail:
        hit = ms.z0 + (L > 0 ? ms.s.back() : 0.0) > V;
        break;
      case model_event::barrier:
        hit = within_barriers(lad, ms.s, ms.z0);
        break;
      case model_event::window:
        hit = good_zero(lad, ms.z0);
        break;
      case model_event::good:
        hit = good_event(lad, ms, V);
        break;
    }
    out[0] = hit ? 1.0 : 0.0;
    for (int ell = 1; ell <= L; ++ell) {
      barrier b = barriers(lad, ell, ms.z0);
      double s = ms.s[std::size_t(ell - 1)];
      out[1 + 3 * (ell - 1)] = s;
      out[2 + 3 * (ell - 1)] = s < b.lower ? 1.0 : 0.0;
      out[3 + 3 * (ell - 1)] = s > b.upper ? 1.0 : 0.0;
    }
  };
  block_stats bs = mc_blocks(n, dim, fn, workers);
  std::vector<double> tot = mc_totals(bs);

  std::size_t hits = std::size_t(std::llround(tot[0]));
  proportion pr = make_proportion(hits, n);
  rec.payload = {{"event", names[int(ev)]},
                 {"V", V},
                 {"n", n},
                 {"hits", hits},
                 {"p_hat", pr.p_hat},
                 {"se", pr.se}};
  if (ev == model_event::gauss_tail) {
    std::vector<double> v2 = variance_ladder_surrogate(lad);
    double var = v2[0] + (L > 0 ? v2[std::size_t(L)] : 0.0);
    double pred = gaussian_tail(V, var);
    rec.payload["variance"] = var;
    rec.payload["prediction"] = pred;
    rec.payload["ratio"] = pred > 0.0 ? pr.p_hat / pred : 0.0;
  }
  nlohmann::json levels = nlohmann::json::array();
  for (int ell = 1; ell <= L; ++ell) {
    levels.push_back(
        {{"level", ell},
         {"mean_s", tot[std::size_t(1 + 3 * (ell - 1))] / double(n)},
         {"frac_below", tot[std::size_t(2 + 3 * (ell - 1))] / double(n)},
         {"frac_above", tot[std::size_t(3 + 3 * (ell - 1))] / double(n)}});
  }
  rec.payload["levels"] = levels;

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rec;
}

}  // namespace zetalab
