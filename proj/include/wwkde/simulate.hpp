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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wwkde/bandwidth.hpp"
#include "wwkde/density.hpp"
#include "wwkde/estimator.hpp"
#include "wwkde/kernel.hpp"
#include "wwkde/theory.hpp"

namespace wwkde {

/// Raised when a replication produces a non-finite estimate.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(const std::string& what, std::uint64_t seed, std::uint64_t replication)
      : std::runtime_error(what), seed(seed), replication(replication) {}
  std::uint64_t seed;
  std::uint64_t replication;
};

struct KernelConfig {
  KernelFamily family = KernelFamily::epanechnikov;
  int dim = 1;
  int order = 1;
  double truncation_radius = 10.0;
};

KernelSpec make_kernel(const KernelConfig& config);

struct GridConfig {
  enum class Kind { point, box } kind = Kind::point;
  std::vector<double> x0;  ///< point grid
  std::vector<double> lower, upper;
  std::vector<int> cells;
  GridMeasure measure = GridMeasure::lebesgue;
};

EvaluationGrid make_grid(const GridConfig& config, int dim);

enum class Target { rate, tail, calibrate };
enum class StatisticKind { pointwise, sup, lp };
enum class Centering { replication_mean, truth };

struct ExperimentConfig {
  DensitySpec density;
  KernelConfig kernel;
  double c2 = 1.0;
  double log_gamma = 0.0;
  std::optional<double> bandwidth_exponent;
  SmoothnessClass smoothness{1.0, 1.0};
  GridConfig grid;
  std::vector<std::uint64_t> n_values;
  std::uint64_t replications = 2;
  std::uint64_t seed = 0;
  Target target = Target::rate;
  StatisticKind statistic = StatisticKind::pointwise;
  double p = 2.0;
  Centering center = Centering::replication_mean;
  int u_points = 200;
  std::optional<double> u_max;
  TailConstants constants;
  double c3 = 0.0;
  double c4_max = 1e6;  ///< returned by calibration when nothing constrains C4
  std::optional<double> slope_tolerance;     ///< rate acceptance window
  std::optional<double> exponent_tolerance;  ///< tail acceptance window

  BandwidthSchedule schedule() const;
  TailModel tail_model() const;
};

/// Replication r draws from Philox4x32 stream r under key `seed`.
std::uint64_t replication_stream(std::uint64_t replication);

/// Runs fn(i) for i in [0, count) on `workers` threads. Each index is
/// handled exactly once; callers write results into slot i, so the output
/// does not depend on the worker count. Exceptions are rethrown (the one
/// from the lowest index wins).
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// WWKDE_WORKERS if set and positive, otherwise hardware concurrency.
int default_workers();

struct RateRow {
  std::uint64_t n = 0;
  double rmse = 0.0;          ///< sqrt(mean_r e_r^2)
  double stderr_rmse = 0.0;   ///< delta-method standard error of rmse
  double mean_abs_error = 0.0;
  double bias = 0.0;          ///< pointwise statistic only, else NaN
  double variance = 0.0;      ///< pointwise statistic only, else NaN
};

struct RateReport {
  std::vector<RateRow> rows;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  double theoretical_slope = 0.0;  ///< -beta / (2 beta + d)
  /// errors[r][j]: statistic of replication r at checkpoint j.
  std::vector<std::vector<double>> errors;
  bool within_tolerance = true;
};

RateReport run_rate_experiment(const ExperimentConfig& cfg, int workers = 1);

struct TailCurve {
  std::uint64_t n = 0;
  std::uint64_t samples = 0;  ///< number of deviations behind p_hat
  std::vector<double> u;
  std::vector<double> p_hat;
  std::vector<double> wilson_lo;
  std::vector<double> wilson_hi;
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  std::size_t fit_points = 0;
  bool reliable = false;
};

/// Exceedance curve P(dev > u) on a uniform u grid over [0, u_max]
/// (u_max defaults to the largest deviation), with 95% Wilson limits and
/// the fitted exponent.
TailCurve build_tail_curve(std::vector<double> deviations, int u_points,
                           std::optional<double> u_max = std::nullopt);

/// Regress ln(-ln p) on ln u over the points with p in [10/M, 0.2];
/// fewer than 5 points marks the fit unreliable.
void fit_tail_exponent(TailCurve& curve);

/// Same regression over u in [u_lo, u_hi] and 0 < p < 1; NaN when fewer
/// than two points qualify.
double local_tail_exponent(const TailCurve& curve, double u_lo, double u_hi);

/// Deviations with P(dev > u) = exp(-u^exponent) exactly.
std::vector<double> synthetic_deviations(double exponent, std::uint64_t count,
                                         std::uint64_t seed);

struct Calibration {
  double c4 = 0.0;
  bool unconstrained = false;  ///< no point bounds C4; c4 is the configured maximum
  bool falsified = false;      ///< no positive C4 makes the bound dominate
  bool dominates = false;      ///< post-check of 2 exp(-c4 u^q*) >= wilson_hi everywhere
};

/// Largest C4 for which 2 exp(-C4 u^q*) stays above the upper Wilson limit
/// at every curve point.
Calibration calibrate_constant(const TailCurve& curve, const TailModel& tm,
                               double c4_max = 1e6);

struct TailCheckpoint {
  TailCurve curve;
  double regime_m = 0.0;
  double gaussian_window_exponent = 0.0;  ///< local exponent over [0.2 m, 0.8 m]
  double center_offset = 0.0;  ///< B_n max_x |center - f|, the observed C3
  Calibration calibration;
  bool exponent_within_tolerance = true;
};

struct TailReport {
  std::vector<TailCheckpoint> checkpoints;
  double theoretical_exponent = 0.0;  ///< (2 beta + d)/(beta + d)
};

TailReport run_tail_experiment(const ExperimentConfig& cfg, int workers = 1);

struct VarianceComparison {
  double ww_variance = 0.0;
  double pr_variance = 0.0;
  double ww_stderr = 0.0;
  double pr_stderr = 0.0;
  double ww_mean = 0.0;
  double pr_mean = 0.0;
};

/// Pointwise variance of WW and PR (bandwidth h_n from the same schedule)
/// at the first grid point, at n = cfg.n_values.back(), over the same samples.
VarianceComparison compare_ww_pr_variance(const ExperimentConfig& cfg, int workers = 1);

}  // namespace wwkde
