// End-to-end checks of the zetalab executable: record shape, the frozen CSV
// schemas, reproducibility of payloads across runs and worker counts, and
// the exit-code contract (0 ok, 2 configuration, 3 infeasible, 4 budget).
//
// The commands run through std::system with output sent to scratch files in
// the working directory, which ctest sets to the build tree where ./zetalab
// lives.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

int run_cli(const std::string& args) {
  std::string cmd = "./zetalab " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

nlohmann::json slurp_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("constants command emits the moment table") {
  REQUIRE(run_cli("constants --k 2 --out cli_constants.json") == 0);
  nlohmann::json rec = slurp_json("cli_constants.json");
  CHECK(rec.at("subcommand") == "constants");
  CHECK(rec.at("build_id").get<std::string>().size() > 0);
  const auto& rows = rec.at("payload").at("rows");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].at("k") == 2);
  CHECK(rows[1].at("a_k").get<double>() == doctest::Approx(0.607927).epsilon(1e-4));
  CHECK(rows[1].at("f_k").get<double>() ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-10));
  CHECK(rows[1].at("C_k").get<double>() ==
        doctest::Approx(0.050661).epsilon(1e-4));
  std::remove("cli_constants.json");
}

TEST_CASE("model payloads reproduce across runs and worker counts") {
  const std::string flags = "model --event gauss-tail --V 0 --n 10000 --seed 7";
  REQUIRE(run_cli(flags + " --out cli_m1.json") == 0);
  REQUIRE(run_cli(flags + " --out cli_m2.json") == 0);
  REQUIRE(run_cli(flags + " --workers 3 --out cli_m3.json") == 0);
  nlohmann::json a = slurp_json("cli_m1.json");
  nlohmann::json b = slurp_json("cli_m2.json");
  nlohmann::json c = slurp_json("cli_m3.json");
  CHECK(a.at("payload") == b.at("payload"));
  CHECK(a.at("payload") == c.at("payload"));
  CHECK(a.at("payload").at("hits").get<long>() > 0);
  // the record echoes the resolved ladder, not just the flags
  CHECK(a.at("config").at("ladder").contains("sigma"));
  std::remove("cli_m1.json");
  std::remove("cli_m2.json");
  std::remove("cli_m3.json");
}

TEST_CASE("ladder description at the reference height") {
  REQUIRE(run_cli("ladder describe --T 1e8 --alpha 1 --delta 1 "
                  "--out cli_ladder.json") == 0);
  nlohmann::json rec = slurp_json("cli_ladder.json");
  const auto& lad = rec.at("payload");
  CHECK(lad.at("L") == 1);
  CHECK(lad.at("t").get<double>() == doctest::Approx(2.913474).epsilon(1e-5));
  CHECK(lad.at("s_source") == "pedagogical");
  CHECK(lad.at("sigma").get<double>() > 0.5);
  std::remove("cli_ladder.json");
}

TEST_CASE("frozen experiment CSV schema") {
  REQUIRE(run_cli("tails --T 1e4 --sigma-delta 1 --V-over-loglogT 0.3 "
                  "--n 256 --seed 11 --out cli_tails.csv") == 0);
  std::string csv = slurp("cli_tails.csv");
  CHECK(csv.rfind("T,sigma,V,n,hits,p_hat,se,prediction,ratio\n", 0) == 0);
  // one header line, one data row
  long lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 2);
  std::remove("cli_tails.csv");
}

TEST_CASE("kernel sweep CSV carries the grid columns") {
  REQUIRE(run_cli("kernel --delta 2 --a-exp 2.5 --grid 100 --skip-poly "
                  "--out cli_kernel.csv") == 0);
  std::string csv = slurp("cli_kernel.csv");
  CHECK(csv.rfind("x,h_minus,h_plus,d_minus_sq,d_plus_sq\n", 0) == 0);
  // without the polynomial stage the D columns are explicitly empty
  CHECK(csv.find(",nan,nan\n") != std::string::npos);
  std::remove("cli_kernel.csv");
}

TEST_CASE("exit codes follow the contract") {
  CHECK(run_cli("model --event nosuch --seed 1") == 2);
  CHECK(run_cli("tails --T 1e4") == 2);  // --seed is mandatory
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("kernel --delta 1.2 --a-exp 2.0") == 3);  // needs Delta^a > 2
  CHECK(run_cli("moments --T 2e6 --seed 1") == 4);
  CHECK(run_cli("--help") == 0);
}
