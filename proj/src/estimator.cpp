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

#include "wwkde/estimator.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wwkde/error.hpp"

namespace wwkde {

namespace {

void check_dims(const EvaluationGrid& grid, const KernelSpec& k) {
  if (grid.dim() != k.dim()) {
    std::ostringstream msg;
    msg << "grid dimension " << grid.dim() << " does not match kernel dimension "
        << k.dim();
    throw ContractError(msg.str());
  }
}

void check_samples(const PointSet& samples, const EvaluationGrid& grid) {
  require(samples.empty() || samples.dim() == grid.dim(),
          "sample dimension does not match the grid");
}

// Adds weight * K((x - xi)/h) to every grid value.
void accumulate(const EvaluationGrid& grid, const KernelSpec& k,
                std::span<const double> xi, double inv_h, double weight,
                std::vector<double>& values, std::vector<double>& scratch) {
  const int d = grid.dim();
  scratch.resize(d);
  const auto& coords = grid.points().coords();
  const std::size_t m = grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double* x = coords.data() + i * d;
    for (int a = 0; a < d; ++a) scratch[a] = (x[a] - xi[a]) * inv_h;
    values[i] += weight * k.eval_unchecked(scratch.data());
  }
}

}  // namespace

PointSet::PointSet(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  require(dim >= 1, "point dimension must be positive");
  require(coords_.size() % dim == 0, "coordinate count is not a multiple of the dimension");
}

void PointSet::push_back(std::span<const double> p) {
  require(static_cast<int>(p.size()) == dim_, "point has the wrong dimension");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

EvaluationGrid::EvaluationGrid(PointSet points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  require(points_.dim() >= 1, "grid dimension must be positive");
  require(weights_.size() == points_.size(), "one weight per grid point required");
  for (double w : weights_)
    require(w >= 0.0 && std::isfinite(w), "grid weights must be nonnegative");
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  auto less = [this](std::size_t a, std::size_t b) {
    const auto pa = points_[a];
    const auto pb = points_[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto pa = points_[order[i - 1]];
    const auto pb = points_[order[i]];
    require(!std::equal(pa.begin(), pa.end(), pb.begin()), "grid points must be distinct");
  }
}

EvaluationGrid EvaluationGrid::box(std::span<const double> lower,
                                   std::span<const double> upper,
                                   std::span<const int> cells_per_axis,
                                   GridMeasure measure) {
  const std::size_t d = lower.size();
  require(d >= 1 && upper.size() == d && cells_per_axis.size() == d,
          "box grid: bounds and cell counts must share one dimension");
  std::size_t total = 1;
  double cell_volume = 1.0;
  for (std::size_t a = 0; a < d; ++a) {
    require(upper[a] > lower[a], "box grid: upper bound must exceed lower bound");
    require(cells_per_axis[a] >= 1, "box grid: need at least one cell per axis");
    total *= static_cast<std::size_t>(cells_per_axis[a]);
    cell_volume *= (upper[a] - lower[a]) / cells_per_axis[a];
  }
  std::vector<double> coords;
  coords.reserve(total * d);
  std::vector<int> idx(d, 0);
  for (std::size_t c = 0; c < total; ++c) {
    for (std::size_t a = 0; a < d; ++a) {
      const double width = (upper[a] - lower[a]) / cells_per_axis[a];
      coords.push_back(lower[a] + (idx[a] + 0.5) * width);
    }
    // Last axis varies fastest.
    for (std::size_t a = d; a-- > 0;) {
      if (++idx[a] < cells_per_axis[a]) break;
      idx[a] = 0;
    }
  }
  const double w = measure == GridMeasure::probability ? 1.0 / static_cast<double>(total)
                                                       : cell_volume;
  return EvaluationGrid(PointSet(static_cast<int>(d), std::move(coords)),
                        std::vector<double>(total, w));
}

EvaluationGrid EvaluationGrid::dirac(std::span<const double> point) {
  return EvaluationGrid(PointSet(static_cast<int>(point.size()),
                                 std::vector<double>(point.begin(), point.end())),
                        {1.0});
}

double EvaluationGrid::total_mass() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

WwEstimator::WwEstimator(std::shared_ptr<const EvaluationGrid> grid, KernelSpec kernel,
                         BandwidthSchedule schedule,
                         std::shared_ptr<const BandwidthTable> table)
    : grid_(std::move(grid)),
      kernel_(std::move(kernel)),
      schedule_(schedule),
      table_(std::move(table)) {
  require(grid_ != nullptr, "estimator needs a grid");
  check_dims(*grid_, kernel_);
  require(schedule_.dim == kernel_.dim(), "schedule dimension does not match the kernel");
  values_.assign(grid_->size(), 0.0);
}

void WwEstimator::update(std::span<const double> xi) {
  require(static_cast<int>(xi.size()) == grid_->dim(),
          "sample dimension does not match the grid");
  for (double c : xi) require(std::isfinite(c), "sample has a non-finite coordinate");

  const std::uint64_t n = n_ + 1;
  double h, inv_h_d;
  if (table_ && n <= table_->size()) {
    h = table_->h(n);
    inv_h_d = table_->inv_h_pow_d(n);
  } else {
    h = bandwidth_at(schedule_, n);
    inv_h_d = std::pow(h, -grid_->dim());
  }
  const double nd = static_cast<double>(n);
  const double keep = (nd - 1.0) / nd;
  for (double& v : values_) v *= keep;
  accumulate(*grid_, kernel_, xi, 1.0 / h, inv_h_d / nd, values_, scratch_);
  n_ = n;
}

WwEstimator ww_init(const EvaluationGrid& grid, const KernelSpec& k,
                    const BandwidthSchedule& s) {
  return WwEstimator(std::make_shared<const EvaluationGrid>(grid), k, s);
}

void ww_update(WwEstimator& state, std::span<const double> xi) { state.update(xi); }

std::vector<double> ww_batch(const PointSet& samples, const EvaluationGrid& grid,
                             const KernelSpec& k, const BandwidthSchedule& s) {
  check_dims(grid, k);
  check_samples(samples, grid);
  std::vector<double> values(grid.size(), 0.0);
  if (samples.empty()) {
    spdlog::warn("ww_batch called with no samples; returning zeros");
    return values;
  }
  std::vector<double> scratch;
  const std::size_t n = samples.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double h = bandwidth_at(s, j + 1);
    accumulate(grid, k, samples[j], 1.0 / h, std::pow(h, -grid.dim()), values, scratch);
  }
  for (double& v : values) v /= static_cast<double>(n);
  return values;
}

std::vector<double> pr_batch(const PointSet& samples, const EvaluationGrid& grid,
                             const KernelSpec& k, double h) {
  require(h > 0.0 && std::isfinite(h), "bandwidth must be positive");
  check_dims(grid, k);
  check_samples(samples, grid);
  std::vector<double> values(grid.size(), 0.0);
  if (samples.empty()) {
    spdlog::warn("pr_batch called with no samples; returning zeros");
    return values;
  }
  std::vector<double> scratch;
  for (std::size_t j = 0; j < samples.size(); ++j)
    accumulate(grid, k, samples[j], 1.0 / h, 1.0, values, scratch);
  const double scale = 1.0 / (static_cast<double>(samples.size()) * std::pow(h, grid.dim()));
  for (double& v : values) v *= scale;
  return values;
}

void clip_and_renormalize(std::vector<double>& values, const EvaluationGrid& grid) {
  require(values.size() == grid.size(), "value count does not match the grid");
  double mass = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::max(values[i], 0.0);
    mass += grid.weights()[i] * values[i];
  }
  if (mass <= 0.0) return;
  for (double& v : values) v /= mass;
}

}  // namespace wwkde
