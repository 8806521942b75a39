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
#include <optional>
#include <vector>

namespace wwkde {

/// Smoothness index beta and Hoelder constant L of the density class.
struct SmoothnessClass {
  double beta = 1.0;
  double holder_const = 1.0;

  SmoothnessClass() = default;
  SmoothnessClass(double beta, double holder_const);

  /// max{ j >= 0 : j <= beta }
  int integer_part() const;
  /// beta - integer_part(), in [0, 1)
  double fractional_part() const;
};

/// h_k = c2 * (ln k)^gamma * k^(-exponent) for k >= 2 and h_1 = c2.
///
/// The exponent defaults to 1/(2 beta + d); an override exists for
/// deliberately mis-tuned schedules in experiments.
struct BandwidthSchedule {
  double c2 = 1.0;
  double beta = 1.0;
  int dim = 1;
  double log_gamma = 0.0;
  std::optional<double> exponent_override;

  BandwidthSchedule() = default;
  BandwidthSchedule(double c2, double beta, int dim, double log_gamma = 0.0);

  double exponent() const;
};

double bandwidth_at(const BandwidthSchedule& s, std::uint64_t k);

/// h_1..h_n together with h_k^{-d}, for hot loops that replay the same
/// schedule many times.
class BandwidthTable {
 public:
  BandwidthTable(const BandwidthSchedule& s, std::uint64_t n_max);

  std::uint64_t size() const { return h_.size(); }
  double h(std::uint64_t k) const { return h_[k - 1]; }
  double inv_h_pow_d(std::uint64_t k) const { return inv_h_d_[k - 1]; }

 private:
  std::vector<double> h_;
  std::vector<double> inv_h_d_;
};

/// B_n = n^(beta / (2 beta + d)).
double normalizer(std::uint64_t n, double beta, int dim);

/// (1/n^2) [ sum_k h_k^{-d} + (sum_k h_k^beta)^2 ], the bias/variance
/// proxy of the mean squared error with its absolute constants dropped.
double target_functional(const BandwidthSchedule& s, std::uint64_t n);

/// Same proxy for every n in 1..n_max in one pass; entry i is Z_{i+1}.
std::vector<double> target_functional_path(const BandwidthSchedule& s,
                                           std::uint64_t n_max);

/// c1 * (1/n) * sum_k h_k^beta
double bias_bound(const BandwidthSchedule& s, std::uint64_t n, double c1);

}  // namespace wwkde
