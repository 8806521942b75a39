// Copyright 2026 The wwkde Authors
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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "wwkde/cli.hpp"
#include "wwkde/csv.hpp"

using namespace wwkde;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "wwkde");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::dispatch(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wwkde_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_small_config(const fs::path& dir) {
  const auto path = dir / "rate.json";
  write_text_file(path, R"({
    "target": "rate",
    "density": {"family": "gaussian", "dim": 1},
    "smoothness": {"beta": 2.0, "L": 1.0},
    "kernel": {"family": "epanechnikov", "order": 1},
    "grid": {"type": "point", "x0": [0.0]},
    "n_values": [100, 400, 1600, 6400],
    "replications": 40,
    "seed": 3,
    "acceptance": {"slope_tolerance": 0.5}
  })");
  return path.string();
}

}  // namespace

TEST_CASE("config hash is stable and order-free") {
  const auto a = json::parse(R"({"b": 1, "a": [1, 2]})");
  const auto b = json::parse(R"({"a": [1, 2],   "b": 1})");
  CHECK(cli::config_hash(a) == cli::config_hash(b));
  CHECK(cli::config_hash(a).size() == 64);
  CHECK(cli::config_hash(a) != cli::config_hash(json::parse(R"({"b": 2, "a": [1, 2]})")));
  CHECK(cli::config_hash(json::object()) ==
        "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a");
}

TEST_CASE("ci subcommand") {
  const auto dir = scratch("ci");
  const std::string alpha = std::to_string(2.0 * std::exp(-8.0));
  CHECK(run({"ci", "--n", "8", "--beta", "1", "--d", "1", "--alpha", "0.000670925255805",
             "--c4", "1", "--out-dir", dir.string()}) == 0);
  const auto j = json::parse(read_text_file(dir / "ci.json"));
  CHECK(j["u_star"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(j["radius"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(run({"ci", "--n", "8", "--beta", "1", "--d", "1", "--alpha", "1.5"}) == 1);
}

TEST_CASE("exit codes") {
  CHECK(run({"validate-kernel", "--family", "gaussian", "--dim", "1"}) == 0);
  CHECK(run({"validate-kernel", "--family", "orthogonal", "--order", "3", "--moment-order", "3"}) == 0);
  CHECK(run({"validate-kernel", "--family", "nope"}) == 1);
  CHECK(run({"no-such-command"}) == 1);
  CHECK(run({"ci", "--bogus", "1"}) == 1);
  CHECK(run({"--help"}) == 0);
  const auto dir = scratch("codes");
  write_text_file(dir / "broken.json", "{ not json");
  CHECK(run({"rate-experiment", "--config", (dir / "broken.json").string(), "--out-dir",
             dir.string()}) == 1);
  CHECK(run({"estimate", "--samples", (dir / "missing.csv").string(), "--lower", "0",
             "--upper", "1"}) == 1);
}

TEST_CASE("experiment outputs do not depend on the worker count") {
  const auto dir = scratch("workers");
  const auto cfg = write_small_config(dir);
  CHECK(run({"--workers", "1", "rate-experiment", "--config", cfg, "--out-dir",
             (dir / "w1").string(), "--svg"}) == 0);
  CHECK(run({"--workers", "3", "rate-experiment", "--config", cfg, "--out-dir",
             (dir / "w3").string(), "--svg"}) == 0);
  for (const char* f : {"rate.csv", "rate_report.json", "rate.svg"})
    CHECK(read_text_file(dir / "w1" / f) == read_text_file(dir / "w3" / f));
  const auto manifest = json::parse(read_text_file(dir / "w1" / "manifest.json"));
  CHECK(manifest["command"] == "rate-experiment");
  CHECK(manifest["base_seed"] == 3);
  CHECK(manifest["outputs"].size() == 3);
  const auto t = CsvTable::read(dir / "w1" / "rate.csv");
  CHECK(t.header() == std::vector<std::string>{"n", "mean_error", "stderr"});
}

TEST_CASE("out-of-window rate run exits with 2") {
  const auto dir = scratch("falsified");
  auto doc = json::parse(read_text_file(write_small_config(dir)));
  doc["acceptance"]["slope_tolerance"] = 1e-6;
  write_text_file(dir / "tight.json", doc.dump());
  CHECK(run({"rate-experiment", "--config", (dir / "tight.json").string(), "--out-dir",
             (dir / "out").string()}) == 2);
}

TEST_CASE("estimate output survives a plot round trip") {
  const auto dir = scratch("estimate");
  write_text_file(dir / "samples.csv", "x\n0.1\n-0.3\n0.25\n0.7\n-1.1\n0.05\n");
  CHECK(run({"estimate", "--samples", (dir / "samples.csv").string(), "--lower", "-2",
             "--upper", "2", "--cells", "50", "--pr", "--out-dir", dir.string()}) == 0);
  const auto est = CsvTable::read(dir / "estimate.csv");
  CHECK(est.header() == std::vector<std::string>{"x_1", "f_ww", "f_pr"});
  CHECK(est.rows().size() == 50);
  CHECK(run({"plot", "--input", (dir / "estimate.csv").string(), "--kind", "estimate",
             "--output", (dir / "plot" / "est.svg").string(), "--csv-out",
             (dir / "echo.csv").string()}) == 0);
  CHECK(fs::exists(dir / "plot" / "est.svg"));
  CHECK(CsvTable::read(dir / "echo.csv").rows() == est.rows());
  CHECK(read_text_file(dir / "echo.csv") == read_text_file(dir / "estimate.csv"));
}

TEST_CASE("calibrate from a curve file") {
  const auto dir = scratch("calibrate");
  CsvTable curve({"u", "p_hat", "wilson_lo", "wilson_hi"});
  for (int i = 1; i <= 20; ++i) {
    const double u = 0.25 * i;
    const double p = 2.0 * std::exp(-2.0 * std::pow(u, 1.5));
    curve.add_row({u, p, p, p});
  }
  curve.write(dir / "curve.csv");
  CHECK(run({"calibrate", "--curve", (dir / "curve.csv").string(), "--beta", "1", "--d", "1",
             "--out-dir", dir.string()}) == 0);
  const auto j = json::parse(read_text_file(dir / "calibration.json"));
  CHECK(j["c4"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(run({"calibrate", "--out-dir", dir.string()}) == 1);
}
