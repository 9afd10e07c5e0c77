// Copyright 2026 The Jackpot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args` (already shell-quoted where needed); stderr is
// folded into the output when `with_stderr` is set.
Run cli(const std::string& args, bool with_stderr = false) {
  std::string cmd = std::string(JACKPOT_CLI_PATH) + " " + args +
                    (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() /
                       ("jackpot_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("evaluate: trump ticket") {
  const Run r = cli("evaluate --t 1000 --c 1000 --s 1000");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["method"] == "exact");
  CHECK(j["expected_return"].get<double>() == doctest::Approx(0.2641).epsilon(2e-3));
}

TEST_CASE("evaluate: methods agree on the two-ticket example") {
  for (const char* method : {"exact", "enumerate", "lemma1"}) {
    const Run r = cli(std::string("evaluate --t 2 --c 2 --s 2 --method ") + method);
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["expected_win"].get<double>() ==
          doctest::Approx(7.0 / 3.0).epsilon(1e-9));
  }
  const Run sim = cli("evaluate --t 2 --c 2 --s 2 --method simulate --seed 1 "
                      "--trials 200000");
  REQUIRE(sim.code == 0);
  const Json j = Json::parse(sim.out);
  CHECK(std::fabs(j["expected_return"].get<double>() - 1.0 / 6.0) <
        4 * j["std_error"].get<double>());
  const Run asym = cli("evaluate --t 2 --c 2 --s 2 --method asymptotic "
                       "--q 0.6,0.4 --p 0.7,0.3 --r 0.7,0.3");
  REQUIRE(asym.code == 0);
  CHECK(Json::parse(asym.out)["expected_return"].get<double>() ==
        doctest::Approx(1.0 / 91.0).epsilon(1e-8));
}

TEST_CASE("evaluate: nothing staked has an undefined return") {
  const Run r = cli("evaluate --t 2 --c 2 --s 0");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["expected_gain"].get<double>() == 0.0);
  CHECK(j["expected_return"].is_null());
  const Run csv = cli("evaluate --t 2 --c 2 --s 0 --format csv");
  CHECK(csv.out.find("undefined") != std::string::npos);
}

TEST_CASE("vector flags accept files") {
  const fs::path dir = scratch_dir();
  const fs::path p = dir / "p.csv";
  std::ofstream(p) << "0.7\n0.3\n";
  const Run from_file = cli("evaluate --t 2 --c 2 --s 2 --p @" + p.string());
  const Run inline_list = cli("evaluate --t 2 --c 2 --s 2 --p 0.7,0.3");
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out == inline_list.out);
}

TEST_CASE("breakeven and its note") {
  const Run r = cli("breakeven --t 1000 --c 1000");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["g_min"].get<double>() == doctest::Approx(-53.55).epsilon(1e-3));
  CHECK(j["first_profitable_integer"] == 583);
  CHECK(j["notes"].get<std::string>().find("290.7981") != std::string::npos);
}

TEST_CASE("table1 csv") {
  const Run r = cli("table1 --t 1000 --c 1000 --kmax 4 --pmf poisson");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"k", "prob", "payoff_s_t",
                                            "contrib_s_t", "payoff_s_1",
                                            "contrib_s_1"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].size() == 6);
  CHECK(std::stod(rows[1][3]) == doctest::Approx(735.76).epsilon(1e-5));
  const Run j = cli("table1 --t 1000 --c 1000 --format json");
  CHECK(Json::parse(j.out)["sum_contrib_s_t"].get<double>() ==
        doctest::Approx(1263.05).epsilon(1e-5));
}

TEST_CASE("sweeps") {
  const Run s = cli("sweep --t 1000 --c 1000 --s-range 1:1000");
  REQUIRE(s.code == 0);
  const auto rows = parse_csv(s.out);
  REQUIRE(rows.size() == 1001);
  CHECK(rows[0] == std::vector<std::string>{"var", "gain", "return"});
  std::string first;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::stod(rows[i][1]) > 0.0) {
      first = rows[i][0];
      break;
    }
  }
  CHECK(first == "583");

  const Run c = cli("sweep --t 1000 --s 1000 --c-range 1000:10000:1000");
  REQUIRE(c.code == 0);
  const auto crow = parse_csv(c.out);
  REQUIRE(crow.size() == 11);
  CHECK(crow.back()[0] == "10000");
  CHECK(std::stod(crow.back()[2]) == doctest::Approx(0.10).epsilon(0.01));

  const Run one = cli("sweep --t 10 --c 10 --s-range 4:4");
  CHECK(parse_csv(one.out).size() == 2);
  CHECK(cli("sweep --t 10 --c 10 --s-range 5:4").code == 2);
  CHECK(cli("sweep --t 10 --c 10").code == 2);
}

TEST_CASE("sweep rows round-trip through evaluate") {
  const Run s = cli("sweep --t 50 --c 40 --s-range 1:120:7");
  REQUIRE(s.code == 0);
  const auto rows = parse_csv(s.out);
  REQUIRE(rows.size() > 10);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Run e = cli("evaluate --t 50 --c 40 --s " + rows[i][0]);
    REQUIRE(e.code == 0);
    const Json j = Json::parse(e.out);
    const double gain = std::stod(rows[i][1]);
    const double ret = std::stod(rows[i][2]);
    CHECK(std::fabs(j["expected_gain"].get<double>() - gain) <=
          1e-9 * std::fabs(gain));
    CHECK(std::fabs(j["expected_return"].get<double>() - ret) <=
          1e-9 * std::fabs(ret));
  }
}

TEST_CASE("groups") {
  const Run r = cli("groups --t 1000 --c 1000 --s 1000 --l 10,500");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["rows"][1]["ratio"].get<double>() == doctest::Approx(0.8197).epsilon(1e-4));
  CHECK(cli("groups --t 1000 --c 1000 --s 1000 --l 7").code == 2);
}

TEST_CASE("equilibrium") {
  const Run r = cli("equilibrium --t 5 --c 10");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["converged"] == true);
  CHECK(j["certificate"] == true);
  for (const auto& v : j["argmin"]) CHECK(v.get<double>() == doctest::Approx(0.2));

  const Run a = cli("equilibrium --t 3 --asymptotic --p 0.5,0.3,0.2 --side syndicate");
  REQUIRE(a.code == 0);
  CHECK(Json::parse(a.out)["argmin"][0].get<double>() == doctest::Approx(0.5));

  const Run capped = cli("equilibrium --t 4 --asymptotic --p 0.6,0.25,0.1,0.05 "
                         "--max-iterations 1");
  CHECK(capped.code == 4);
  CHECK(Json::parse(capped.out)["converged"] == false);
}

TEST_CASE("simulate is byte-identical for a fixed seed") {
  const std::string args = "simulate --t 2 --c 2 --s 2 --trials 1000 --seed 42";
  const Run a = cli(args);
  const Run b = cli(args);
  const Run c = cli(args + " --workers 4");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const Json j = Json::parse(a.out);
  for (const char* key : {"n_trials", "mean_syndicate_return", "std_error",
                          "mean_crowd_return", "carryover_frequency", "seed"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["seed"] == 42);

  const Run unseeded = cli("simulate --t 2 --c 2 --s 2 --trials 10", true);
  REQUIRE(unseeded.code == 0);
  CHECK(unseeded.out.find("seed: ") != std::string::npos);
}

TEST_CASE("--out writes a manifest that replays the run") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "sim.json";
  REQUIRE(cli("simulate --t 3 --c 4 --s 2 --trials 5000 --out " + out.string())
              .code == 0);
  const fs::path manifest = dir / "sim.json.manifest.json";
  REQUIRE(fs::exists(manifest));
  const Json m = Json::parse(slurp(manifest));
  CHECK(m["command"] == "simulate");
  CHECK(m["version"] == "1.0.0");
  CHECK(m["seed"].is_number_unsigned());
  CHECK(m.contains("timestamp"));
  CHECK(m["parameters"]["t"] == 3);

  const fs::path again = dir / "again.json";
  REQUIRE(cli("rerun --manifest " + manifest.string() + " --out " +
              again.string())
              .code == 0);
  CHECK(slurp(again) == slurp(out));
  const Run to_stdout = cli("rerun --manifest " + manifest.string());
  CHECK(to_stdout.out == slurp(out));

  const fs::path sweep = dir / "sweep.csv";
  REQUIRE(cli("sweep --t 20 --c 20 --s-range 1:20 --out " + sweep.string())
              .code == 0);
  const Run replay =
      cli("rerun --manifest " + (dir / "sweep.csv.manifest.json").string());
  CHECK(replay.out == slurp(sweep));
  fs::remove_all(dir);
}

TEST_CASE("exit codes and messages") {
  const Run missing = cli("evaluate --t 2 --c 2", true);
  CHECK(missing.code == 2);
  CHECK(missing.out.find("--s") != std::string::npos);

  const Run bad_p = cli("evaluate --t 2 --c 2 --s 1 --p 0.5,0.6", true);
  CHECK(bad_p.code == 2);
  CHECK(bad_p.out.find("--p") != std::string::npos);

  const Run bad_len = cli("evaluate --t 3 --c 2 --s 1 --q 0.5,0.5", true);
  CHECK(bad_len.code == 2);
  CHECK(bad_len.out.find("--q") != std::string::npos);

  const Run bad_method = cli("evaluate --t 2 --c 2 --s 1 --method magic", true);
  CHECK(bad_method.code == 2);
  CHECK(bad_method.out.find("--method") != std::string::npos);

  CHECK(cli("evaluate --t 10 --c 10 --s 1 --method enumerate").code == 3);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("--help").code == 0);
}
