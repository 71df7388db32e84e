// Experiment records.
//
// Every command run produces one JSON record carrying: the resolved
// configuration (including the full ladder, so a table or figure can be
// regenerated from the record alone), a build identifier, wall time, the
// results payload, and a list of named pass/fail checks.  Payloads are
// deterministic functions of (config, seed): sampling uses counter-mode
// streams indexed by sample, and reductions run over fixed-shape pairwise
// trees, so the worker count never touches the numbers (tolerance 1e-12 is
// granted in comparisons anyway, and typically unused).
//
// CSV side-channels use frozen column schemas.  The experiment family
// (tails / mollify / moments) shares one schema,
//   T, sigma, V, n, hits, p_hat, se, prediction, ratio
// where columns keep their literal meaning for tail estimates and are
// documented per command when a column is re-purposed (e.g. the
// mollification estimate rides in p_hat with hits = n).  The kernel sweep
// writes x, h_minus, h_plus, d_minus_sq, d_plus_sq.

#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "zetalab/dirichlet.hpp"
#include "zetalab/kernel.hpp"
#include "zetalab/params.hpp"

namespace zetalab {

struct run_record {
  std::string subcommand;
  std::string build_id;
  double wall_seconds = 0.0;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json payload = nlohmann::json::object();
  nlohmann::json checks = nlohmann::json::array();
};

std::string build_identifier();

void append_check(run_record& rec, const std::string& name, bool pass,
                  const std::string& detail = "");

// true when every recorded check passed
bool checks_pass(const run_record& rec);

nlohmann::json record_json(const run_record& rec);

void write_text_file(const std::string& path, const std::string& text);

// frozen CSV schemas
std::string tail_csv_header();
std::string tail_csv_row(const tail_estimate& te);
std::string kernel_csv(const sandwich_report& rep);

// Monte Carlo moment experiment: tau uniform on [T, 2T], estimate of
// E|zeta(1/2 + i tau)|^{2k} against C_k (log T)^{k^2} and against the
// shape constant c_k (log T)^{k^2}.  k = 1 carries a hard ratio check in
// [0.8, 1.25]; other k report the ratios without judgement.  The default
// budget refuses T > 1e6.
run_record moments_experiment(double T, double k, std::size_t n,
                              uint64_t seed, int workers);

// Random-model barrier experiments on a resolved ladder.
enum class model_event { gauss_tail, barrier, window, good };

model_event parse_model_event(const std::string& name);  // throws config_error

// Samples the Gaussian surrogate path n times and estimates the event
// probability; the payload carries per-level exceedance diagnostics
// (mean of S_l, fractions beyond the barrier pair anchored at each
// sample's own Z_0).  For gauss_tail the prediction column holds the
// exact Gaussian tail at variance t_0/2 + v_L^2.
run_record model_experiment(const ladder& lad, model_event ev, double V,
                            std::size_t n, uint64_t seed, int workers);

}  // namespace zetalab
