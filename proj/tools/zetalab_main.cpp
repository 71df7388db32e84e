// zetalab command surface.
//
// One executable, eight subcommands:
//
//   ladder describe   resolve a parameter schedule, print it as a table + JSON
//   primes stats      sieve and print pi(x) checkpoints and the Mertens product
//   model             barrier events on the Gaussian surrogate of the random
//                     Euler product (gauss-tail | barrier | window | good)
//   tails             MC estimate of P(log|zeta(sigma+i tau)| > V), tau ~ U[T, 2T]
//   mollify           MC estimate of E|zeta M - 1|^2 on a concrete desk ladder
//   moments           MC estimate of E|zeta(1/2+i tau)|^{2k} vs (log T)^{k^2} scales
//   constants         the explicit constant table a_k, f_k, C_k, c_k and C(alpha, delta)
//   kernel            build the Ingham kernel and verify the indicator sandwich
//
// Every run prints one JSON record: resolved config (including the full
// ladder where one is involved), build id, wall time, payload, named checks.
// --out persists either that record (any extension but .csv) or the
// command's CSV side-channel (.csv).  The experiment family shares the frozen
// CSV schema  T, sigma, V, n, hits, p_hat, se, prediction, ratio;  the kernel
// sweep writes  x, h_minus, h_plus, d_minus_sq, d_plus_sq;  model writes
// per-level exceedance diagnostics.
//
// Exit codes: 0 ok, 2 bad configuration, 3 infeasible parameters, 4 budget
// refusal.  Stochastic subcommands require --seed; payloads are deterministic
// in (config, seed) and invariant under --workers.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zetalab/constants.hpp"
#include "zetalab/dirichlet.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/kernel.hpp"
#include "zetalab/params.hpp"
#include "zetalab/primes.hpp"
#include "zetalab/randmodel.hpp"
#include "zetalab/runrecord.hpp"

namespace {

using namespace zetalab;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Shared ladder flag group.  A JSON config file seeds the fields; explicit
// flags override whatever they name (switching mode when --T/--t is given).
struct lflags {
  double T = 0.0, t = 0.0, alpha = 1.0, delta = 1.0, s = 0.0;
  std::string file;
  CLI::Option* oT = nullptr;
  CLI::Option* ot = nullptr;
  CLI::Option* oalpha = nullptr;
  CLI::Option* odelta = nullptr;
  CLI::Option* os = nullptr;
};

void add_ladder_flags(CLI::App* cmd, lflags& f) {
  f.oT = cmd->add_option("--T", f.T, "height scale; t = loglog T");
  f.ot = cmd->add_option("--t", f.t, "work at t = loglog T directly");
  f.oT->excludes(f.ot);
  f.oalpha = cmd->add_option("--alpha", f.alpha, "barrier slope scale V / t");
  f.odelta = cmd->add_option("--delta", f.delta,
                             "offset in sigma = 1/2 + delta e^{-t_L}");
  f.os = cmd->add_option("--s-exp", f.s, "override the ladder exponent s");
  cmd->add_option("--ladder", f.file,
                  "ladder config JSON file (snake_case keys); flags override");
}

ladder resolve_ladder(const lflags& f, const ladder_config* fallback) {
  ladder_config cfg;
  if (!f.file.empty())
    cfg = parse_ladder_config(read_text_file(f.file));
  else if (f.oT->count() == 0 && f.ot->count() == 0) {
    if (!fallback)
      throw config_error("ladder: need --T, --t, or --ladder <file>");
    cfg = *fallback;
  }
  if (f.oT->count()) {
    cfg.mode = ladder_mode::from_T;
    cfg.T = f.T;
  }
  if (f.ot->count()) {
    cfg.mode = ladder_mode::from_t;
    cfg.t = f.t;
  }
  if (f.oalpha->count()) cfg.alpha = f.alpha;
  if (f.odelta->count()) cfg.delta = f.delta;
  if (f.os->count()) cfg.s_exponent = f.s;
  return build_ladder(cfg);
}

void ladder_checks(run_record& rec, const ladder& lad) {
  for (const check_item& c : lad.validation)
    append_check(rec, c.name, c.holds, c.detail);
}

// stdout record + optional persistence; .csv selects the side-channel
void emit(const run_record& rec, const std::string& out,
          const std::string& csv) {
  std::cout << record_json(rec).dump(2) << "\n";
  if (out.empty()) return;
  bool want_csv = out.size() > 4 && out.rfind(".csv") == out.size() - 4;
  if (want_csv) {
    if (csv.empty())
      throw config_error("no CSV schema for this subcommand; use a .json path");
    write_text_file(out, csv);
  } else {
    write_text_file(out, record_json(rec).dump(2) + "\n");
  }
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string model_csv(const run_record& rec) {
  std::string s = "level,mean_s,frac_below,frac_above\n";
  char buf[160];
  for (const auto& lv : rec.payload.at("levels")) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n",
                  lv.at("level").get<int>(), lv.at("mean_s").get<double>(),
                  lv.at("frac_below").get<double>(),
                  lv.at("frac_above").get<double>());
    s += buf;
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zetalab: a numerical laboratory for the large deviations of "
      "log|zeta(1/2+i tau)| — parameter ladders, random Euler products, "
      "mollifiers, moment constants, and the Ingham-kernel sandwich."};
  app.require_subcommand(1);
  app.footer(
      "Sieve memory budget: set ZETALAB_SIEVE_LIMIT (default 1e9).\n"
      "Exit codes: 0 ok, 2 configuration, 3 infeasible, 4 budget.");

  // ladder describe
  auto* ladder_cmd = app.add_subcommand("ladder", "parameter schedules");
  ladder_cmd->require_subcommand(1);
  auto* describe = ladder_cmd->add_subcommand(
      "describe", "resolve a schedule and print it as a table and JSON");
  lflags lf;
  std::string l_out;
  add_ladder_flags(describe, lf);
  describe->add_option("--out", l_out, "write the run record");

  // primes stats
  auto* primes_cmd = app.add_subcommand("primes", "prime enumeration");
  primes_cmd->require_subcommand(1);
  auto* stats =
      primes_cmd->add_subcommand("stats", "pi(x) checkpoints and Mertens product");
  double p_limit = 1e6;
  std::string p_out;
  stats->add_option("--limit", p_limit, "sieve limit (default 1e6)");
  stats->add_option("--out", p_out, "write the run record");

  // model
  auto* model_cmd = app.add_subcommand(
      "model", "barrier events on the Gaussian surrogate path");
  lflags mf;
  std::string m_event = "gauss-tail", m_out;
  double m_V = 0.0;
  std::size_t m_n = 10000;
  uint64_t m_seed = 0;
  int m_workers = 1;
  model_cmd->add_option("--event", m_event,
                        "gauss-tail | barrier | window | good");
  model_cmd->add_option("--V", m_V, "exceedance level");
  model_cmd->add_option("--n", m_n, "sample count");
  model_cmd->add_option("--seed", m_seed, "RNG seed")->required();
  model_cmd->add_option("--workers", m_workers, "worker threads");
  add_ladder_flags(model_cmd, mf);
  model_cmd->add_option("--out", m_out, "run record (.json) or per-level CSV (.csv)");

  // tails
  auto* tails_cmd = app.add_subcommand(
      "tails", "P(log|zeta(sigma+i tau)| > V) over tau uniform in [T, 2T]");
  double t_T = 1e5, t_delta = 1.0, t_alpha = 0.0, t_V = 0.0;
  std::size_t t_n = 1000;
  uint64_t t_seed = 0;
  int t_workers = 1;
  std::string t_out;
  tails_cmd->add_option("--T", t_T, "height scale")->required();
  tails_cmd->add_option("--sigma-delta", t_delta,
                        "delta in sigma = 1/2 + delta e^{-t}");
  auto* t_oalpha = tails_cmd->add_option(
      "--V-over-loglogT", t_alpha, "alpha; sets V = alpha * loglog T");
  auto* t_oV = tails_cmd->add_option("--V", t_V, "exceedance level directly");
  t_oalpha->excludes(t_oV);
  tails_cmd->add_option("--n", t_n, "sample count");
  tails_cmd->add_option("--seed", t_seed, "RNG seed")->required();
  tails_cmd->add_option("--workers", t_workers, "worker threads");
  tails_cmd->add_option("--out", t_out, "run record (.json) or CSV row (.csv)");

  // mollify
  auto* mollify_cmd = app.add_subcommand(
      "mollify", "E|zeta M - 1|^2 on a concrete desk-scale ladder");
  double mo_T = 1e4, mo_delta = 1.0;
  std::size_t mo_n = 300;
  uint64_t mo_seed = 0;
  int mo_workers = 1;
  std::string mo_file, mo_out;
  mollify_cmd->add_option("--T", mo_T, "height scale (>= 120)");
  auto* mo_odelta = mollify_cmd->add_option("--sigma-delta", mo_delta,
                                            "delta in sigma = 1/2 + delta e^{-t_L}");
  mollify_cmd->add_option("--n", mo_n, "sample count");
  mollify_cmd->add_option("--seed", mo_seed, "RNG seed")->required();
  mollify_cmd->add_option("--workers", mo_workers, "worker threads");
  mollify_cmd->add_option("--ladder", mo_file,
                          "ladder config JSON file (else a pedagogical 2-level "
                          "schedule under T)");
  mollify_cmd->add_option("--out", mo_out, "run record (.json) or CSV row (.csv)");

  // moments
  auto* moments_cmd = app.add_subcommand(
      "moments", "E|zeta(1/2+i tau)|^{2k} against the (log T)^{k^2} scales");
  double mm_T = 1e5, mm_k = 1.0;
  std::size_t mm_n = 2000;
  uint64_t mm_seed = 0;
  int mm_workers = 1;
  std::string mm_out;
  moments_cmd->add_option("--T", mm_T, "height scale (budget: T <= 1e6)");
  moments_cmd->add_option("--k", mm_k, "moment parameter k >= 0");
  moments_cmd->add_option("--n", mm_n, "sample count");
  moments_cmd->add_option("--seed", mm_seed, "RNG seed")->required();
  moments_cmd->add_option("--workers", mm_workers, "worker threads");
  moments_cmd->add_option("--out", mm_out, "run record (.json) or CSV row (.csv)");

  // constants
  auto* constants_cmd = app.add_subcommand(
      "constants", "a_k, f_k, C_k = a_k f_k, c_k, and C(alpha, delta)");
  int c_kmax = 3;
  double c_alpha = 1.0, c_delta = 1.0, c_tol = 1e-8;
  std::string c_out;
  constants_cmd->add_option("--k", c_kmax, "table rows k = 0..k");
  auto* c_oalpha =
      constants_cmd->add_option("--alpha", c_alpha, "also report C(alpha, delta)");
  constants_cmd->add_option("--delta", c_delta, "delta for C(alpha, delta)");
  constants_cmd->add_option("--tol", c_tol, "a_k tail-bound target");
  constants_cmd->add_option("--out", c_out, "write the run record");

  // kernel
  auto* kernel_cmd = app.add_subcommand(
      "kernel", "Ingham-kernel build certificates and the indicator sandwich");
  double k_delta = 4.0, k_aexp = 2.5, k_xmax = 0.0;
  long k_grid = 10000, k_nodes = 8193;
  int k_factors = 96;
  bool k_skip_poly = false;
  std::string k_out;
  kernel_cmd->add_option("--delta", k_delta, "indicator half-width Delta > 1");
  kernel_cmd->add_option("--a-exp", k_aexp, "exponent a; widths Delta^{-a}");
  kernel_cmd->add_option("--x-max", k_xmax, "grid reach (0: 2 Delta^{c-a})");
  kernel_cmd->add_option("--grid", k_grid, "number of grid points");
  kernel_cmd->add_option("--nodes", k_nodes, "quadrature nodes per coefficient");
  kernel_cmd->add_option("--factors", k_factors, "sinc factors in G");
  kernel_cmd->add_flag("--skip-poly", k_skip_poly,
                       "check only the smoothed indicators, not the polynomial");
  kernel_cmd->add_option("--out", k_out, "run record (.json) or grid CSV (.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (describe->parsed()) {
      auto t0 = std::chrono::steady_clock::now();
      ladder lad = resolve_ladder(lf, nullptr);
      run_record rec;
      rec.subcommand = "ladder describe";
      rec.build_id = build_identifier();
      nlohmann::json lj = nlohmann::json::parse(ladder_json(lad));
      rec.config["ladder"] = lj;
      rec.payload = lj;
      ladder_checks(rec, lad);
      rec.wall_seconds = elapsed(t0);
      std::cout << ladder_table(lad);
      emit(rec, l_out, "");
      return 0;
    }

    if (stats->parsed()) {
      auto t0 = std::chrono::steady_clock::now();
      if (p_limit < 10.0) throw config_error("primes stats: need --limit >= 10");
      prime_table tab = sieve(static_cast<uint64_t>(p_limit));
      run_record rec;
      rec.subcommand = "primes stats";
      rec.build_id = build_identifier();
      rec.config = {{"limit", p_limit}};
      nlohmann::json cps = nlohmann::json::array();
      std::printf("%14s  %12s\n", "x", "pi(x)");
      for (double x = 10.0; x <= p_limit; x *= 10.0) {
        std::size_t pi = tab.count(x);
        std::printf("%14.0f  %12zu\n", x, pi);
        cps.push_back({{"x", x}, {"pi", pi}});
      }
      rec.payload["checkpoints"] = cps;
      rec.payload["count_total"] = tab.primes.size();
      rec.payload["mertens_product"] = mertens_product(tab, p_limit);
      rec.payload["e_minus_gamma"] = std::exp(-euler_gamma());
      rec.wall_seconds = elapsed(t0);
      emit(rec, p_out, "");
      return 0;
    }

    if (model_cmd->parsed()) {
      // default schedule: a small t-mode ladder entirely on the analytic side
      ladder_config def;
      def.mode = ladder_mode::from_t;
      def.t = 12.0;
      ladder lad = resolve_ladder(mf, &def);
      run_record rec = model_experiment(lad, parse_model_event(m_event), m_V,
                                        m_n, m_seed, m_workers);
      emit(rec, m_out, model_csv(rec));
      return 0;
    }

    if (tails_cmd->parsed()) {
      double t = iter_log(t_T, 2);
      double V = t_oalpha->count() ? t_alpha * t : (t_oV->count() ? t_V : 0.0);
      double sigma = 0.5 + t_delta * std::exp(-t);
      run_record rec;
      rec.subcommand = "tails";
      rec.build_id = build_identifier();
      rec.config = {{"T", t_T},     {"sigma_delta", t_delta}, {"V", V},
                    {"n", t_n},     {"seed", t_seed},         {"workers", t_workers},
                    {"sigma", sigma}};
      auto t0 = std::chrono::steady_clock::now();
      zeta_table zt = make_zeta_table(sigma, t_T);
      tail_estimate te = empirical_tail(zt, t_T, V, t_delta, t_n, t_seed, t_workers);
      rec.payload = {{"T", te.T},         {"sigma", te.sigma},
                     {"V", te.V},         {"n", te.n},
                     {"hits", te.hits},   {"p_hat", te.p_hat},
                     {"se", te.se},       {"prediction", te.prediction},
                     {"ratio", te.ratio}};
      rec.wall_seconds = elapsed(t0);
      emit(rec, t_out, tail_csv_header() + tail_csv_row(te));
      return 0;
    }

    if (mollify_cmd->parsed()) {
      ladder lad;
      if (!mo_file.empty()) {
        ladder_config cfg = parse_ladder_config(read_text_file(mo_file));
        if (mo_odelta->count()) cfg.delta = mo_delta;
        lad = build_ladder(cfg);
      } else {
        if (mo_T < 120.0)
          throw config_error("mollify: need --T >= 120 for the default schedule");
        ladder_config cfg;
        cfg.mode = ladder_mode::explicit_levels;
        cfg.t = iter_log(mo_T, 2);
        cfg.explicit_t0 = iter_log(40.0, 2);
        cfg.explicit_levels = {iter_log(60.0, 2), iter_log(80.0, 2)};
        cfg.delta = mo_delta;
        cfg.s_exponent = 1.0;  // pedagogical schedule, not the paper default
        lad = build_ladder(cfg);
      }
      double TL = lad.T_level(lad.L);
      if (!(TL < 1e9)) throw budget_error("mollify: T_L beyond the sieve budget");
      run_record rec;
      rec.subcommand = "mollify";
      rec.build_id = build_identifier();
      rec.config = {{"T", mo_T},
                    {"sigma_delta", lad.delta},
                    {"n", mo_n},
                    {"seed", mo_seed},
                    {"workers", mo_workers},
                    {"ladder", nlohmann::json::parse(ladder_json(lad))}};
      auto t0 = std::chrono::steady_clock::now();
      prime_table tab = sieve(static_cast<uint64_t>(std::ceil(TL)) + 1);
      mollification_report rep =
          mollification_check(tab, lad, mo_T, mo_n, mo_seed, mo_workers);
      rec.payload = {{"delta", rep.delta},
                     {"estimate", rep.estimate},
                     {"se", rep.se},
                     {"bound_shape", rep.bound_shape},
                     {"ratio", rep.bound_shape > 0.0
                                   ? rep.estimate / rep.bound_shape
                                   : 0.0}};
      rec.wall_seconds = elapsed(t0);
      tail_estimate te;
      te.T = mo_T;
      te.sigma = lad.sigma;
      te.V = 0.0;
      te.n = mo_n;
      te.hits = mo_n;  // schema reuse: estimate rides in p_hat
      te.p_hat = rep.estimate;
      te.se = rep.se;
      te.prediction = rep.bound_shape;
      te.ratio = rep.bound_shape > 0.0 ? rep.estimate / rep.bound_shape : 0.0;
      emit(rec, mo_out, tail_csv_header() + tail_csv_row(te));
      return 0;
    }

    if (moments_cmd->parsed()) {
      run_record rec = moments_experiment(mm_T, mm_k, mm_n, mm_seed, mm_workers);
      tail_estimate te;
      te.T = mm_T;
      te.sigma = 0.5;
      te.V = 0.0;
      te.n = mm_n;
      te.hits = mm_n;  // schema reuse: moment estimate rides in p_hat
      te.p_hat = rec.payload.at("estimate").get<double>();
      te.se = rec.payload.at("se").get<double>();
      te.prediction = rec.payload.at("prediction").get<double>();
      te.ratio = rec.payload.at("ratio").get<double>();
      emit(rec, mm_out, tail_csv_header() + tail_csv_row(te));
      return 0;
    }

    if (constants_cmd->parsed()) {
      auto t0 = std::chrono::steady_clock::now();
      if (c_kmax < 0) throw config_error("constants: need --k >= 0");
      run_record rec;
      rec.subcommand = "constants";
      rec.build_id = build_identifier();
      rec.config = {{"k_max", c_kmax}, {"tol", c_tol}};
      std::vector<moment_row> rows = constant_set(c_kmax, c_tol);
      std::printf("%3s  %18s  %12s  %18s  %18s  %18s\n", "k", "a_k", "a_tail",
                  "f_k", "C_k", "c_k");
      nlohmann::json jr = nlohmann::json::array();
      for (const moment_row& r : rows) {
        std::printf("%3d  %18.12g  %12.3g  %18.12g  %18.12g  %18.12g\n", r.k,
                    r.a_k, r.a_tail, r.f_k, r.C_k, r.c_k);
        jr.push_back({{"k", r.k},
                      {"a_k", r.a_k},
                      {"a_tail", r.a_tail},
                      {"f_k", r.f_k},
                      {"C_k", r.C_k},
                      {"c_k", r.c_k}});
      }
      rec.payload["rows"] = jr;
      if (c_oalpha->count()) {
        rec.config["alpha"] = c_alpha;
        rec.config["delta"] = c_delta;
        rec.payload["c_alpha"] = c_alpha_constant(c_alpha, c_delta);
        rec.payload["delta_star"] = delta_star(c_alpha);
      }
      rec.wall_seconds = elapsed(t0);
      emit(rec, c_out, "");
      return 0;
    }

    if (kernel_cmd->parsed()) {
      auto t0 = std::chrono::steady_clock::now();
      run_record rec;
      rec.subcommand = "kernel";
      rec.build_id = build_identifier();
      rec.config = {{"delta", k_delta},     {"a_exp", k_aexp},
                    {"x_max", k_xmax},      {"grid", k_grid},
                    {"nodes", k_nodes},     {"factors", k_factors},
                    {"with_poly", !k_skip_poly}};
      ingham_kernel kern = build_kernel(k_factors);
      sandwich_report rep = verify_sandwich(kern, k_delta, k_aexp, k_grid,
                                            !k_skip_poly, k_xmax, k_nodes);
      rec.payload = {{"delta", rep.delta},
                     {"x_max", rep.x_max},
                     {"n_grid", rep.n_grid},
                     {"viol_h_plus", rep.viol_h_plus},
                     {"viol_h_minus", rep.viol_h_minus},
                     {"viol_d_plus", rep.viol_d_plus},
                     {"viol_d_minus", rep.viol_d_minus},
                     {"viol_order", rep.viol_order},
                     {"cert_inner_log", rep.cert_inner_log},
                     {"cert_outer_log", rep.cert_outer_log},
                     {"slack_inner_log", rep.slack_inner_log},
                     {"slack_outer_log", rep.slack_outer_log},
                     {"certified", rep.certified},
                     {"d_checked", rep.d_checked},
                     {"d_skip_reason", rep.d_skip_reason},
                     {"d_nu", rep.d_nu},
                     {"d_coeff_margin_min", rep.d_coeff_margin_min},
                     {"d_trunc_bound", rep.d_trunc_bound},
                     {"parseval_diff", rep.parseval_diff}};
      append_check(rec, "no grid violations",
                   rep.viol_h_plus + rep.viol_h_minus + rep.viol_d_plus +
                           rep.viol_d_minus + rep.viol_order ==
                       0);
      append_check(rec, "far bounds certified", rep.certified);
      rec.wall_seconds = elapsed(t0);
      emit(rec, k_out, kernel_csv(rep));
      return 0;
    }

    throw config_error("unknown subcommand");
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const budget_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
