#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& out_path) {
  const std::string cmd = std::string(DENSECOMB_CLI_PATH) + " " + args + " --output " + out_path +
                          " 2> cli_test_stderr.log";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return RunResult{code, slurp(out_path)};
}

double csv_cell(const std::string& body, int row_after_header, int col) {
  std::stringstream ss(body);
  std::string line;
  int data_row = -1;  // skips '#' lines and the column header
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (data_row >= 0 && data_row == row_after_header) {
      std::stringstream cells(line);
      std::string cell;
      for (int c = 0; std::getline(cells, cell, ','); ++c)
        if (c == col) return std::stod(cell);
    }
    ++data_row;
  }
  REQUIRE(false);
  return 0.0;
}

}  // namespace

TEST_CASE("cli: density matches the known value and exits 0") {
  const auto r = run_cli(
      "density --scheme fibonacci --window interval:-1:0.618034:open-closed --r 10000",
      "cli_density.csv");
  CHECK(r.exit_code == 0);
  const double empirical = csv_cell(r.output, 0, 0);
  CHECK(std::abs(empirical - 0.7236068) < 0.01 * 0.7236068);
}

TEST_CASE("cli: diffract top row is the k=0 peak with intensity 0.2") {
  const auto r = run_cli(
      "diffract --scheme fibonacci --weight gaussian --floor 1e-3 --kstar-radius 1 --k-radius 5",
      "cli_diffract.csv");
  CHECK(r.exit_code == 0);
  CHECK(csv_cell(r.output, 0, 0) == 0.0);  // dual coords (0,0)
  CHECK(csv_cell(r.output, 0, 1) == 0.0);
  CHECK(csv_cell(r.output, 0, 2) == 0.0);  // k = 0
  CHECK(std::abs(csv_cell(r.output, 0, 4) - 0.2) < 1e-12);
}

TEST_CASE("cli: diffract output matches the golden files") {
  const auto csv = run_cli(
      "diffract --scheme fibonacci --weight gaussian --floor 1e-3 --kstar-radius 1 --k-radius 5",
      "cli_golden_check.csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output == slurp(std::string(DENSECOMB_GOLDEN_DIR) + "/fib_gauss_spectrum.csv"));

  const auto js = run_cli(
      "diffract --scheme fibonacci --weight gaussian --floor 1e-3 --kstar-radius 1 --k-radius 5 "
      "--format json",
      "cli_golden_check.json");
  CHECK(js.exit_code == 0);
  CHECK(js.output == slurp(std::string(DENSECOMB_GOLDEN_DIR) + "/fib_gauss_spectrum.json"));
}

TEST_CASE("cli: missing seed on randomtile exits 2") {
  const auto r = run_cli("randomtile --samples 10 --tiles 10", "cli_noseed.csv");
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli: unknown window spec exits 2, huge region exits 3, failed check exits 4") {
  const auto bad =
      run_cli("density --scheme fibonacci --window pentagon:1 --r 100", "cli_bad.csv");
  CHECK(bad.exit_code == 2);

  const auto huge = run_cli(
      "modelset --scheme fibonacci --window ball:0:1000000 --r 100000000", "cli_huge.csv");
  CHECK(huge.exit_code == 3);

  // shrinking the certified radii far below their certified values makes the
  // truncated sums visibly disagree, so the check reports failure
  const auto fail = run_cli(
      "poisson-check --scheme fibonacci --weight gaussian --sigma 1 --tol 1e-3 "
      "--radius-scale 0.1",
      "cli_poisson_fail.csv");
  CHECK(fail.exit_code == 4);

  // and a tolerance unreachable below the radius caps is a resource error
  const auto unreachable = run_cli(
      "poisson-check --scheme fibonacci --weight gaussian --sigma 1 --tol 1e-18",
      "cli_poisson_cap.csv");
  CHECK(unreachable.exit_code == 3);
}

TEST_CASE("cli: emitted config replays bit-identically") {
  const auto first = run_cli(
      "density --scheme fibonacci --window fibonacci --r 500 --format json", "cli_replay_a.json");
  REQUIRE(first.exit_code == 0);

  const auto doc = nlohmann::json::parse(first.output);
  std::ofstream("cli_replay_config.json") << doc.at("config").dump();
  const auto second = run_cli("--config cli_replay_config.json", "cli_replay_b.json");
  CHECK(second.exit_code == 0);
  CHECK(second.output == first.output);
}

TEST_CASE("cli: randomtile is bit-identical across thread counts and replays") {
  const std::string base =
      "randomtile --samples 400 --tiles 300 --p-u 0.3819660112501051 --bins 80 --seed 9001";
  const auto t1 = run_cli(base + " --threads 1", "cli_rt_t1.csv");
  const auto t4 = run_cli(base + " --threads 4", "cli_rt_t4.csv");
  REQUIRE(t1.exit_code == 0);
  REQUIRE(t4.exit_code == 0);
  CHECK(t1.output == t4.output);

  const auto js = run_cli(base + " --format json", "cli_rt.json");
  REQUIRE(js.exit_code == 0);
  const auto doc = nlohmann::json::parse(js.output);
  std::ofstream("cli_rt_config.json") << doc.at("config").dump();
  const auto replay = run_cli("--config cli_rt_config.json --threads 3", "cli_rt_replay.json");
  CHECK(replay.exit_code == 0);
  CHECK(replay.output == js.output);
}

TEST_CASE("cli: scheme file round-trip through scheme-info") {
  const auto direct = run_cli("scheme-info --scheme fibonacci --format json", "cli_si_a.json");
  REQUIRE(direct.exit_code == 0);
  const auto doc = nlohmann::json::parse(direct.output);
  std::ofstream("cli_scheme.json") << doc.at("results").dump();

  const auto via_file = run_cli("scheme-info --scheme cli_scheme.json --format json",
                                "cli_si_b.json");
  REQUIRE(via_file.exit_code == 0);
  const auto doc2 = nlohmann::json::parse(via_file.output);
  CHECK(doc2.at("results").at("covolume") == doc.at("results").at("covolume"));
  CHECK(doc2.at("results").at("certified") == true);
}

TEST_CASE("cli: weyl and fourier-bohr commands emit sane values") {
  const auto weyl =
      run_cli("weyl --scheme fibonacci --weight gaussian --r 2000", "cli_weyl.csv");
  CHECK(weyl.exit_code == 0);
  CHECK(std::abs(csv_cell(weyl.output, 0, 0) - oracle::kInvSqrt5) < 0.01 * oracle::kInvSqrt5);

  const auto fb = run_cli(
      "fourier-bohr --scheme fibonacci --weight gaussian --r 2000 --dual-coords 1,1 --format json",
      "cli_fb.json");
  CHECK(fb.exit_code == 0);
  const auto doc = nlohmann::json::parse(fb.output);
  CHECK(std::abs(doc.at("results").at("limit_re").get<double>() - oracle::kFourierBohr11) <
        1e-12);
}
