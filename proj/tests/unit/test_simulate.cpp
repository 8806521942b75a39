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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "wwkde/config.hpp"
#include "wwkde/csv.hpp"
#include "wwkde/error.hpp"
#include "wwkde/metrics.hpp"
#include "wwkde/simulate.hpp"

using namespace wwkde;
using nlohmann::json;

namespace {

ExperimentConfig small_rate_config() {
  return experiment_config_from_json(json::parse(R"({
    "target": "rate",
    "density": {"family": "gaussian", "dim": 1},
    "smoothness": {"beta": 2.0, "L": 1.0},
    "kernel": {"family": "epanechnikov", "order": 1},
    "grid": {"type": "point", "x0": [0.0]},
    "n_values": [64, 256, 1024, 4096, 16384],
    "replications": 60,
    "seed": 77
  })"));
}

}  // namespace

TEST_CASE("parallel_for visits every index once") {
  for (int workers : {1, 3, 8}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_THROWS(parallel_for(10, 2, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("boom");
  }));
  CHECK(replication_stream(5) != replication_stream(6));
}

TEST_CASE("tail fitter recovers a synthetic exponent") {
  for (double e : {1.2, 1.5, 1.8}) {
    const auto curve = build_tail_curve(synthetic_deviations(e, 100000, 4), 200);
    CHECK(curve.reliable);
    CHECK(curve.exponent == doctest::Approx(e).epsilon(0.02 / e));
  }
}

TEST_CASE("tail curves are monotone probabilities") {
  const auto curve = build_tail_curve(synthetic_deviations(1.5, 5000, 9), 50);
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    CHECK(curve.p_hat[i] >= 0.0);
    CHECK(curve.p_hat[i] <= 1.0);
    CHECK(curve.wilson_lo[i] <= curve.p_hat[i]);
    CHECK(curve.wilson_hi[i] >= curve.p_hat[i]);
    if (i > 0) {
      CHECK(curve.u[i] > curve.u[i - 1]);
      CHECK(curve.p_hat[i] <= curve.p_hat[i - 1]);
    }
  }
  const std::vector<double> few{1.0, 2.0, 3.0};
  const auto sparse = build_tail_curve(few, 10);
  CHECK_FALSE(sparse.reliable);
  CHECK(std::isnan(local_tail_exponent(sparse, 100.0, 200.0)));
}

TEST_CASE("calibration recovers a known constant") {
  const TailModel tm(1.0, 1);
  const double qs = tm.exponent_qstar();
  TailCurve curve;
  for (int i = 1; i <= 100; ++i) {
    const double u = 0.5 + 0.05 * i;
    const double p = 2.0 * std::exp(-3.0 * std::pow(u, qs));
    curve.u.push_back(u);
    curve.p_hat.push_back(p);
    curve.wilson_lo.push_back(p);
    curve.wilson_hi.push_back(p);
  }
  const auto c = calibrate_constant(curve, tm);
  CHECK(c.c4 == doctest::Approx(3.0).epsilon(1e-3 / 3.0));
  CHECK(c.dominates);
  CHECK_FALSE(c.falsified);

  TailCurve zero;
  zero.u = {1.0, 2.0};
  zero.p_hat = zero.wilson_lo = zero.wilson_hi = {0.0, 0.0};
  const auto z = calibrate_constant(zero, tm, 500.0);
  CHECK(z.unconstrained);
  CHECK(z.c4 == 500.0);
}

TEST_CASE("calibrated bound dominates a sampled curve") {
  const TailModel tm(1.0, 1);
  const auto curve = build_tail_curve(synthetic_deviations(1.5, 20000, 21), 100);
  const auto c = calibrate_constant(curve, tm);
  REQUIRE(std::isfinite(c.c4));
  for (std::size_t i = 0; i < curve.u.size(); ++i)
    CHECK(2.0 * std::exp(-c.c4 * std::pow(curve.u[i], 1.5)) >= curve.wilson_hi[i] * (1 - 1e-12));
}

TEST_CASE("rate experiment is deterministic across worker counts") {
  const auto cfg = small_rate_config();
  const auto a = run_rate_experiment(cfg, 1);
  const auto b = run_rate_experiment(cfg, 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].rmse == b.rows[i].rmse);
  CHECK(a.errors == b.errors);
  CHECK(a.slope == b.slope);
  CHECK(a.theoretical_slope == doctest::Approx(-0.4));
}

TEST_CASE("rate experiment contracts") {
  auto cfg = small_rate_config();
  cfg.n_values = {10, 100, 1000};
  CHECK_THROWS_AS(run_rate_experiment(cfg), ContractError);
  cfg = small_rate_config();
  cfg.replications = 1;
  CHECK_THROWS_AS(run_rate_experiment(cfg), ContractError);
  cfg = small_rate_config();
  cfg.n_values = {10, 100, 50, 1000};
  CHECK_THROWS_AS(run_rate_experiment(cfg), ContractError);
  cfg = small_rate_config();
  cfg.target = Target::tail;
  CHECK_THROWS_AS(run_rate_experiment(cfg), ContractError);
}

TEST_CASE("a badly shrinking bandwidth slows convergence") {
  auto cfg = experiment_config_from_json(json::parse(R"({
    "target": "rate",
    "density": {"family": "triangular", "dim": 1},
    "smoothness": {"beta": 1.0, "L": 1.0},
    "kernel": {"family": "epanechnikov", "order": 1},
    "grid": {"type": "point", "x0": [0.3]},
    "n_values": [256, 1024, 4096, 16384],
    "replications": 100,
    "seed": 5
  })"));
  const double optimal = run_rate_experiment(cfg).slope;
  cfg.bandwidth_exponent = 0.9;
  const double wrong = run_rate_experiment(cfg).slope;
  CHECK(wrong > optimal);
}

TEST_CASE("variance follows the averaged inverse bandwidth sum") {
  const TestDensity f = make_test_density({});
  const std::vector<double> x0{0.0};
  const auto grid = EvaluationGrid::dirac(x0);
  const BandwidthSchedule s(1.0, 2.0, 1, 0.0);
  const auto k = KernelSpec::epanechnikov(1);
  std::vector<double> ratios;
  for (std::uint64_t n : {100u, 1000u, 10000u}) {
    std::vector<std::vector<double>> reps;
    for (std::uint64_t r = 0; r < 200; ++r) {
      Philox4x32 rng(1000 + n, r);
      auto st = ww_init(grid, k, s);
      double x = 0.0;
      for (std::uint64_t i = 0; i < n; ++i) {
        f.sample(rng, std::span<double>(&x, 1));
        st.update(std::span<const double>(&x, 1));
      }
      reps.push_back(st.values());
    }
    const double truth = f.pdf(x0);
    const auto rep = bias_variance_decompose(reps, std::vector<double>{truth});
    double inv = 0.0;
    for (std::uint64_t i = 1; i <= n; ++i) inv += 1.0 / bandwidth_at(s, i);
    ratios.push_back(rep.pointwise_variance[0] * double(n) * double(n) / inv);
  }
  for (double r : ratios) {
    CHECK(r > 0.1);
    CHECK(r < 1.0);
  }
}

TEST_CASE("single trajectory error trends down") {
  DensitySpec spec;
  spec.family = DensityFamily::smooth_bump;
  const auto f = make_test_density(spec);
  const std::vector<double> lo{-1.2}, hi{1.2};
  const std::vector<int> cells{240};
  const auto grid = EvaluationGrid::box(lo, hi, cells, GridMeasure::lebesgue);
  std::vector<double> truth;
  for (std::size_t i = 0; i < grid.size(); ++i) truth.push_back(f.pdf(grid.point(i)));
  auto st = ww_init(grid, KernelSpec::epanechnikov(1), {1.0, 2.0, 1, 0.0});
  Philox4x32 rng(123, 0);
  std::vector<double> errors;
  double x = 0.0;
  for (std::uint64_t n = 1; n <= (1u << 16); ++n) {
    f.sample(rng, std::span<double>(&x, 1));
    st.update(std::span<const double>(&x, 1));
    if ((n & (n - 1)) == 0 && n >= 16) {
      std::vector<double> diff(grid.size());
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = st.values()[i] - truth[i];
      errors.push_back(lp_norm(diff, grid.weights(), 2.0));
    }
  }
  REQUIRE(errors.size() == 13);
  const double late = *std::max_element(errors.end() - 4, errors.end());
  const double early = std::min(errors[0], errors[1]);
  CHECK(late < early);
}

TEST_CASE("small tail experiment") {
  auto cfg = experiment_config_from_json(json::parse(R"({
    "target": "tail",
    "density": {"family": "triangular", "dim": 1},
    "smoothness": {"beta": 1.0, "L": 1.0},
    "kernel": {"family": "epanechnikov", "order": 1},
    "grid": {"type": "point", "x0": [0.0]},
    "n_values": [50, 200],
    "replications": 3000,
    "seed": 9,
    "tail": {"center": "truth", "u_points": 60}
  })"));
  const auto a = run_tail_experiment(cfg, 1);
  const auto b = run_tail_experiment(cfg, 3);
  REQUIRE(a.checkpoints.size() == 2);
  CHECK(a.theoretical_exponent == doctest::Approx(1.5));
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& cp = a.checkpoints[j];
    CHECK(cp.curve.samples == 3000);
    CHECK(cp.curve.p_hat == b.checkpoints[j].curve.p_hat);
    CHECK(cp.regime_m == doctest::Approx(std::cbrt(double(cp.curve.n))));
    CHECK(cp.calibration.dominates);
    CHECK(cp.center_offset >= 0.0);
  }
}

TEST_CASE("variance comparison at the mode") {
  auto cfg = experiment_config_from_json(json::parse(R"({
    "target": "rate",
    "density": {"family": "triangular", "dim": 1},
    "smoothness": {"beta": 1.0, "L": 1.0},
    "kernel": {"family": "epanechnikov", "order": 1},
    "grid": {"type": "point", "x0": [0.0]},
    "n_values": [300],
    "replications": 200,
    "seed": 31
  })"));
  const auto v = compare_ww_pr_variance(cfg, 2);
  CHECK(v.ww_variance > 0.0);
  CHECK(v.pr_variance > 0.0);
  CHECK(v.ww_stderr > 0.0);
  CHECK(v.ww_mean == doctest::Approx(1.0).epsilon(0.1));
  CHECK(v.pr_mean == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("experiment configs") {
  for (const char* name : {"rate_beta1_triangular.json", "rate_beta2_gaussian.json", "tail_beta1.json"}) {
    const auto doc = json::parse(read_text_file(std::string(WWKDE_SOURCE_DIR "/configs/") + name));
    CHECK_NOTHROW(experiment_config_from_json(doc));
  }
  json bad = json::parse(R"({"density": {"family": "gaussian"}, "colour": 1})");
  CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
  bad = json::parse(R"({"density": {"family": "triangular"}, "smoothness": {"beta": 2.0}})");
  CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
  bad = json::parse(R"({"density": {"family": "gaussian"}, "kernel": {"family": "box"}})");
  CHECK_THROWS(experiment_config_from_json(bad));
  bad = json::parse(R"({"density": {"family": "gaussian"}, "seed": "abc"})");
  CHECK_THROWS_AS(experiment_config_from_json(bad), ConfigError);
  CHECK_THROWS_AS(experiment_config_from_json(json::parse(R"({"seed": 1})")), ConfigError);
}
