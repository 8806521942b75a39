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
#include <memory>
#include <span>
#include <vector>

#include "wwkde/bandwidth.hpp"
#include "wwkde/kernel.hpp"

namespace wwkde {

/// Row-major set of points in R^dim.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : dim_(dim) {}
  PointSet(int dim, std::vector<double> coords);

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }
  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  void push_back(std::span<const double> p);
  const std::vector<double>& coords() const { return coords_; }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

enum class GridMeasure {
  probability,  ///< cell weights normalised to total mass 1
  lebesgue,     ///< raw cell volumes
};

/// Fixed query points plus quadrature weights realising a finite measure.
class EvaluationGrid {
 public:
  /// Points must be distinct and weights nonnegative, one per point.
  EvaluationGrid(PointSet points, std::vector<double> weights);

  /// Cell midpoints of a regular box partition.
  static EvaluationGrid box(std::span<const double> lower,
                            std::span<const double> upper,
                            std::span<const int> cells_per_axis,
                            GridMeasure measure);
  /// A single point carrying unit mass.
  static EvaluationGrid dirac(std::span<const double> point);

  int dim() const { return points_.dim(); }
  std::size_t size() const { return points_.size(); }
  std::span<const double> point(std::size_t i) const { return points_[i]; }
  const PointSet& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const;

 private:
  PointSet points_;
  std::vector<double> weights_;
};

/// Streaming Wolverton-Wagner estimate on a fixed grid.
///
/// Only the running values are kept; samples are folded in one at a time
/// with f_n = ((n-1)/n) f_{n-1} + K((x - xi_n)/h_n) / (n h_n^d).
/// Single writer: h_n depends on arrival order, so updates must be applied
/// sequentially. Values are left unclipped (negative for order >= 2 kernels).
class WwEstimator {
 public:
  WwEstimator(std::shared_ptr<const EvaluationGrid> grid, KernelSpec kernel,
              BandwidthSchedule schedule,
              std::shared_ptr<const BandwidthTable> table = nullptr);

  /// Throws ContractError on a dimension mismatch or a non-finite
  /// coordinate; the state is left untouched in that case.
  void update(std::span<const double> xi);

  std::uint64_t count() const { return n_; }
  const std::vector<double>& values() const { return values_; }
  const EvaluationGrid& grid() const { return *grid_; }
  const KernelSpec& kernel() const { return kernel_; }
  const BandwidthSchedule& schedule() const { return schedule_; }

 private:
  std::shared_ptr<const EvaluationGrid> grid_;
  KernelSpec kernel_;
  BandwidthSchedule schedule_;
  std::shared_ptr<const BandwidthTable> table_;
  std::uint64_t n_ = 0;
  std::vector<double> values_;
  std::vector<double> scratch_;
};

WwEstimator ww_init(const EvaluationGrid& grid, const KernelSpec& k,
                    const BandwidthSchedule& s);
void ww_update(WwEstimator& state, std::span<const double> xi);

/// Direct sum (1/n) sum_k h_k^{-d} K((x - xi_k)/h_k); zeros for no samples.
std::vector<double> ww_batch(const PointSet& samples, const EvaluationGrid& grid,
                             const KernelSpec& k, const BandwidthSchedule& s);

/// Parzen-Rosenblatt estimate with the single bandwidth h for all samples.
std::vector<double> pr_batch(const PointSet& samples, const EvaluationGrid& grid,
                             const KernelSpec& k, double h);

/// Optional post-processing: negative values are set to 0 and the rest
/// rescaled so the weighted grid sum is 1. An all-zero vector is left alone.
void clip_and_renormalize(std::vector<double>& values, const EvaluationGrid& grid);

}  // namespace wwkde
