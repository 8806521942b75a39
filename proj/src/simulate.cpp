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

#include "wwkde/simulate.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "wwkde/error.hpp"
#include "wwkde/metrics.hpp"
#include "wwkde/rng.hpp"
#include "wwkde/stats.hpp"

namespace wwkde {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_checkpoints(const ExperimentConfig& cfg) {
  require(!cfg.n_values.empty(), "experiment needs at least one n value");
  require(cfg.n_values.front() >= 1, "n values must be positive");
  for (std::size_t i = 1; i < cfg.n_values.size(); ++i)
    require(cfg.n_values[i] > cfg.n_values[i - 1], "n values must be strictly increasing");
  require(cfg.replications >= 2, "experiment needs at least 2 replications");
}

std::vector<double> truth_on_grid(const TestDensity& density, const EvaluationGrid& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = density.pdf(grid.point(i));
  return out;
}

double deviation_statistic(const std::vector<double>& values, const std::vector<double>& center,
                           const EvaluationGrid& grid, StatisticKind kind, double p) {
  switch (kind) {
    case StatisticKind::pointwise:
      return std::abs(values[0] - center[0]);
    case StatisticKind::sup:
    case StatisticKind::lp: {
      std::vector<double> diff(values.size());
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = values[i] - center[i];
      return lp_norm(diff, grid.weights(), kind == StatisticKind::sup ? kSupNorm : p);
    }
  }
  return kNaN;
}

struct Setup {
  TestDensity density;
  KernelSpec kernel;
  BandwidthSchedule schedule;
  std::shared_ptr<const EvaluationGrid> grid;
  std::shared_ptr<const BandwidthTable> table;
  std::vector<double> truth;
};

Setup make_setup(const ExperimentConfig& cfg) {
  const int d = cfg.density.dim;
  require(cfg.kernel.dim == d, "kernel and density dimensions differ");
  auto density = make_test_density(cfg.density);
  auto kernel = make_kernel(cfg.kernel);
  auto schedule = cfg.schedule();
  auto grid = std::make_shared<const EvaluationGrid>(make_grid(cfg.grid, d));
  auto table = std::make_shared<const BandwidthTable>(schedule, cfg.n_values.back());
  auto truth = truth_on_grid(density, *grid);
  return {std::move(density), std::move(kernel), schedule, std::move(grid), std::move(table),
          std::move(truth)};
}

// Runs one seeded trajectory and hands the estimate to `at_checkpoint`
// after each n in cfg.n_values.
template <typename F>
void run_trajectory(const ExperimentConfig& cfg, const Setup& s, std::uint64_t replication,
                    F&& at_checkpoint) {
  Philox4x32 rng(cfg.seed, replication_stream(replication));
  WwEstimator est(s.grid, s.kernel, s.schedule, s.table);
  std::vector<double> xi(cfg.density.dim);
  std::size_t next = 0;
  const std::uint64_t n_max = cfg.n_values.back();
  for (std::uint64_t k = 1; k <= n_max; ++k) {
    s.density.sample(rng, xi);
    est.update(xi);
    if (k == cfg.n_values[next]) {
      for (double v : est.values()) {
        if (!std::isfinite(v)) {
          std::ostringstream msg;
          msg << "non-finite estimate in replication " << replication << " (seed " << cfg.seed
              << ") at n = " << k;
          throw ExperimentError(msg.str(), cfg.seed, replication);
        }
      }
      at_checkpoint(next, est.values());
      ++next;
    }
  }
}

}  // namespace

KernelSpec make_kernel(const KernelConfig& config) {
  switch (config.family) {
    case KernelFamily::gaussian: return KernelSpec::gaussian(config.dim);
    case KernelFamily::epanechnikov: return KernelSpec::epanechnikov(config.dim);
    case KernelFamily::orthogonal: return build_orthogonal_kernel(config.dim, config.order);
    case KernelFamily::custom: break;
  }
  throw ConfigError("custom kernels cannot be built from configuration");
}

EvaluationGrid make_grid(const GridConfig& config, int dim) {
  if (config.kind == GridConfig::Kind::point) {
    std::vector<double> x0 = config.x0.empty() ? std::vector<double>(dim, 0.0) : config.x0;
    require(static_cast<int>(x0.size()) == dim, "grid point has the wrong dimension");
    return EvaluationGrid::dirac(x0);
  }
  require(static_cast<int>(config.lower.size()) == dim, "grid bounds have the wrong dimension");
  return EvaluationGrid::box(config.lower, config.upper, config.cells, config.measure);
}

BandwidthSchedule ExperimentConfig::schedule() const {
  BandwidthSchedule s(c2, smoothness.beta, density.dim, log_gamma);
  s.exponent_override = bandwidth_exponent;
  return s;
}

TailModel ExperimentConfig::tail_model() const {
  return TailModel(smoothness.beta, density.dim, constants);
}

std::uint64_t replication_stream(std::uint64_t replication) { return replication; }

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < error_index) error_index = i, error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

int default_workers() {
  if (const char* env = std::getenv("WWKDE_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

RateReport run_rate_experiment(const ExperimentConfig& cfg, int workers) {
  require(cfg.target == Target::rate, "run_rate_experiment needs target = rate");
  check_checkpoints(cfg);
  require(cfg.n_values.size() >= 4, "rate experiment needs at least 4 n values");
  if (static_cast<double>(cfg.n_values.back()) < 100.0 * cfg.n_values.front())
    spdlog::warn("rate experiment n values span less than two decades; the slope is less certain");
  const Setup s = make_setup(cfg);
  const std::size_t m = cfg.replications;
  const std::size_t checkpoints = cfg.n_values.size();

  RateReport report;
  report.errors.assign(m, std::vector<double>(checkpoints, 0.0));
  std::vector<std::vector<double>> point_values(m, std::vector<double>(checkpoints, 0.0));
  parallel_for(m, workers, [&](std::size_t r) {
    run_trajectory(cfg, s, r, [&](std::size_t j, const std::vector<double>& values) {
      report.errors[r][j] = deviation_statistic(values, s.truth, *s.grid, cfg.statistic, cfg.p);
      point_values[r][j] = values[0];
    });
  });

  const double md = static_cast<double>(m);
  std::vector<double> log_n, log_err;
  for (std::size_t j = 0; j < checkpoints; ++j) {
    RateRow row;
    row.n = cfg.n_values[j];
    double sum_sq = 0.0, sum_abs = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      sum_sq += report.errors[r][j] * report.errors[r][j];
      sum_abs += std::abs(report.errors[r][j]);
    }
    const double mse = sum_sq / md;
    double var_sq = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double dev = report.errors[r][j] * report.errors[r][j] - mse;
      var_sq += dev * dev;
    }
    var_sq /= (md - 1.0);
    row.rmse = std::sqrt(mse);
    row.stderr_rmse = row.rmse > 0.0 ? std::sqrt(var_sq / md) / (2.0 * row.rmse) : 0.0;
    row.mean_abs_error = sum_abs / md;
    if (cfg.statistic == StatisticKind::pointwise) {
      double mean = 0.0;
      for (std::size_t r = 0; r < m; ++r) mean += point_values[r][j];
      mean /= md;
      double var = 0.0;
      for (std::size_t r = 0; r < m; ++r)
        var += (point_values[r][j] - mean) * (point_values[r][j] - mean);
      row.bias = mean - s.truth[0];
      row.variance = var / (md - 1.0);
    } else {
      row.bias = kNaN;
      row.variance = kNaN;
    }
    report.rows.push_back(row);
    log_n.push_back(std::log(static_cast<double>(row.n)));
    log_err.push_back(std::log(row.rmse));
  }
  const auto fit = fit_line(log_n, log_err);
  report.slope = fit.slope;
  report.slope_stderr = fit.slope_stderr;
  report.intercept = fit.intercept;
  const double beta = cfg.smoothness.beta;
  report.theoretical_slope = -beta / (2.0 * beta + cfg.density.dim);
  if (cfg.slope_tolerance)
    report.within_tolerance =
        std::abs(report.slope - report.theoretical_slope) <= *cfg.slope_tolerance;
  return report;
}

TailCurve build_tail_curve(std::vector<double> deviations, int u_points,
                           std::optional<double> u_max) {
  require(!deviations.empty(), "tail curve needs at least one deviation");
  require(u_points >= 2, "tail curve needs at least two u points");
  std::sort(deviations.begin(), deviations.end());
  const double top = u_max.value_or(deviations.back());
  require(top > 0.0, "tail curve needs a positive u range");
  TailCurve curve;
  curve.samples = deviations.size();
  for (int i = 0; i < u_points; ++i) {
    const double u = top * i / (u_points - 1);
    const auto above = static_cast<std::size_t>(
        deviations.end() - std::upper_bound(deviations.begin(), deviations.end(), u));
    const auto ci = wilson_interval(above, deviations.size());
    curve.u.push_back(u);
    curve.p_hat.push_back(static_cast<double>(above) / static_cast<double>(deviations.size()));
    curve.wilson_lo.push_back(ci.lo);
    curve.wilson_hi.push_back(ci.hi);
  }
  fit_tail_exponent(curve);
  return curve;
}

void fit_tail_exponent(TailCurve& curve) {
  const double floor = 10.0 / static_cast<double>(curve.samples);
  const double m = static_cast<double>(curve.samples);
  std::vector<double> x, y, w;
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    const double p = curve.p_hat[i];
    if (curve.u[i] > 0.0 && p >= floor && p <= 0.2) {
      x.push_back(std::log(curve.u[i]));
      y.push_back(std::log(-std::log(p)));
      // Inverse delta-method variance of ln(-ln p_hat).
      const double lp = std::log(p);
      w.push_back(m * p * lp * lp / (1.0 - p));
    }
  }
  curve.fit_points = x.size();
  curve.reliable = x.size() >= 5;
  if (x.size() >= 2) {
    const auto fit = fit_line(x, y, w);
    curve.exponent = fit.slope;
    curve.exponent_stderr = fit.slope_stderr;
  } else {
    curve.exponent = kNaN;
    curve.exponent_stderr = kNaN;
  }
}

double local_tail_exponent(const TailCurve& curve, double u_lo, double u_hi) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    const double u = curve.u[i];
    const double p = curve.p_hat[i];
    if (u >= u_lo && u <= u_hi && u > 0.0 && p > 0.0 && p < 1.0) {
      x.push_back(std::log(u));
      y.push_back(std::log(-std::log(p)));
    }
  }
  if (x.size() < 2) return kNaN;
  return fit_line(x, y).slope;
}

std::vector<double> synthetic_deviations(double exponent, std::uint64_t count,
                                         std::uint64_t seed) {
  require(exponent > 0.0, "synthetic exponent must be positive");
  Philox4x32 rng(seed, 0);
  std::vector<double> out(count);
  for (auto& v : out) v = std::pow(-std::log(rng.uniform_open()), 1.0 / exponent);
  return out;
}

Calibration calibrate_constant(const TailCurve& curve, const TailModel& tm, double c4_max) {
  require(!curve.u.empty(), "calibration needs a nonempty curve");
  require(c4_max > 0.0, "calibration maximum must be positive");
  const double qs = tm.exponent_qstar();
  Calibration out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    const double u = curve.u[i];
    const double p = curve.wilson_hi[i];
    if (u <= 0.0 || p <= 0.0) continue;
    // 2 exp(-C u^q*) >= p  <=>  C <= ln(2/p) / u^q*
    best = std::min(best, std::log(2.0 / p) / std::pow(u, qs));
  }
  if (std::isinf(best)) {
    out.c4 = c4_max;
    out.unconstrained = true;
  } else if (!(best > 0.0)) {
    out.c4 = kNaN;
    out.falsified = true;
    return out;
  } else {
    out.c4 = std::min(best, c4_max);
  }
  out.dominates = true;
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    const double bound = 2.0 * std::exp(-out.c4 * std::pow(curve.u[i], qs));
    if (bound < curve.wilson_hi[i] * (1.0 - 1e-12)) out.dominates = false;
  }
  out.falsified = !out.dominates;
  return out;
}

TailReport run_tail_experiment(const ExperimentConfig& cfg, int workers) {
  require(cfg.target == Target::tail, "run_tail_experiment needs target = tail");
  check_checkpoints(cfg);
  const Setup s = make_setup(cfg);
  const std::size_t m = cfg.replications;
  const std::size_t checkpoints = cfg.n_values.size();
  const std::size_t g = s.grid->size();

  // values[j][r * g + i]
  std::vector<std::vector<double>> values(checkpoints, std::vector<double>(m * g));
  parallel_for(m, workers, [&](std::size_t r) {
    run_trajectory(cfg, s, r, [&](std::size_t j, const std::vector<double>& v) {
      std::copy(v.begin(), v.end(), values[j].begin() + static_cast<std::ptrdiff_t>(r * g));
    });
  });

  const TailModel tm = cfg.tail_model();
  TailReport report;
  report.theoretical_exponent = tm.exponent_qstar();
  for (std::size_t j = 0; j < checkpoints; ++j) {
    const std::uint64_t n = cfg.n_values[j];
    const double bn = normalizer(n, cfg.smoothness.beta, cfg.density.dim);
    std::vector<double> mean(g, 0.0);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t i = 0; i < g; ++i) mean[i] += values[j][r * g + i];
    for (double& v : mean) v /= static_cast<double>(m);
    const auto& center = cfg.center == Centering::truth ? s.truth : mean;

    std::vector<double> deviations(m);
    std::vector<double> row(g);
    for (std::size_t r = 0; r < m; ++r) {
      std::copy_n(values[j].begin() + static_cast<std::ptrdiff_t>(r * g), g, row.begin());
      deviations[r] = bn * deviation_statistic(row, center, *s.grid, cfg.statistic, cfg.p);
    }

    TailCheckpoint cp;
    cp.curve = build_tail_curve(std::move(deviations), cfg.u_points, cfg.u_max);
    cp.curve.n = n;
    cp.regime_m = tm.regime_m(n);
    cp.gaussian_window_exponent =
        local_tail_exponent(cp.curve, 0.2 * cp.regime_m, 0.8 * cp.regime_m);
    double offset = 0.0;
    for (std::size_t i = 0; i < g; ++i) offset = std::max(offset, std::abs(mean[i] - s.truth[i]));
    cp.center_offset = bn * offset;
    cp.calibration = calibrate_constant(cp.curve, tm, cfg.c4_max);
    if (cfg.exponent_tolerance) {
      cp.exponent_within_tolerance =
          cp.curve.reliable &&
          std::abs(cp.curve.exponent - report.theoretical_exponent) <= *cfg.exponent_tolerance;
    }
    report.checkpoints.push_back(std::move(cp));
  }
  return report;
}

VarianceComparison compare_ww_pr_variance(const ExperimentConfig& cfg, int workers) {
  check_checkpoints(cfg);
  const Setup s = make_setup(cfg);
  const std::uint64_t n = cfg.n_values.back();
  const std::size_t m = cfg.replications;
  const double h_pr = bandwidth_at(s.schedule, n);
  std::vector<double> ww(m), pr(m);
  parallel_for(m, workers, [&](std::size_t r) {
    Philox4x32 rng(cfg.seed, replication_stream(r));
    PointSet samples(cfg.density.dim);
    std::vector<double> xi(cfg.density.dim);
    for (std::uint64_t k = 0; k < n; ++k) {
      s.density.sample(rng, xi);
      samples.push_back(xi);
    }
    ww[r] = ww_batch(samples, *s.grid, s.kernel, s.schedule)[0];
    pr[r] = pr_batch(samples, *s.grid, s.kernel, h_pr)[0];
  });

  auto summarize = [m](const std::vector<double>& v, double& mean, double& var, double& se) {
    const double md = static_cast<double>(m);
    mean = 0.0;
    for (double x : v) mean += x;
    mean /= md;
    double m2 = 0.0, m4 = 0.0;
    for (double x : v) {
      const double d2 = (x - mean) * (x - mean);
      m2 += d2;
      m4 += d2 * d2;
    }
    var = m2 / (md - 1.0);
    const double pop_var = m2 / md;
    se = std::sqrt(std::max(0.0, m4 / md - pop_var * pop_var) / md);
  };
  VarianceComparison out;
  summarize(ww, out.ww_mean, out.ww_variance, out.ww_stderr);
  summarize(pr, out.pr_mean, out.pr_variance, out.pr_stderr);
  return out;
}

}  // namespace wwkde
