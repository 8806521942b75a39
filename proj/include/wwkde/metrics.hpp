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

#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wwkde {

/// Pass as p to lp_norm for the sup-norm.
inline constexpr double kSupNorm = std::numeric_limits<double>::infinity();

/// (sum_i w_i |v_i|^p)^(1/p), or max_i |v_i| for p = kSupNorm.
double lp_norm(std::span<const double> values, std::span<const double> weights, double p);

struct ErrorReport {
  std::map<double, double> lp_errors;
  double sup_error = 0.0;
  double normalizer = 1.0;
  /// lp_errors scaled by the normalizer.
  std::map<double, double> normalized;
  double normalized_sup = 0.0;
  /// Only filled for replicated runs.
  std::vector<double> pointwise_bias;
  std::vector<double> pointwise_variance;
};

/// L_p errors (and the sup error) of one estimate against the truth.
ErrorReport error_report(std::span<const double> estimate, std::span<const double> truth,
                         std::span<const double> weights, std::span<const double> ps,
                         double normalizer);

/// Pointwise bias (replication mean minus truth) and unbiased variance.
/// With M replications, mean((v - truth)^2) = bias^2 + variance (M - 1)/M.
ErrorReport bias_variance_decompose(const std::vector<std::vector<double>>& replicated,
                                    std::span<const double> truth);

nlohmann::json to_json(const ErrorReport& report);

/// Columns p, error, normalized_error; the sup row is written with p = inf.
std::string to_csv(const ErrorReport& report);

}  // namespace wwkde
