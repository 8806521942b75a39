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

#include "wwkde/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "wwkde/csv.hpp"
#include "wwkde/error.hpp"

namespace wwkde {

double lp_norm(std::span<const double> values, std::span<const double> weights, double p) {
  require(values.size() == weights.size(), "lp_norm: one weight per value required");
  require(p >= 1.0, "lp_norm: p must be at least 1");
  for (double w : weights) require(w >= 0.0, "lp_norm: weights must be nonnegative");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    s += weights[i] * std::pow(std::abs(values[i]), p);
  return std::pow(s, 1.0 / p);
}

ErrorReport error_report(std::span<const double> estimate, std::span<const double> truth,
                         std::span<const double> weights, std::span<const double> ps,
                         double normalizer) {
  require(estimate.size() == truth.size(), "error_report: estimate and truth differ in length");
  require(normalizer > 0.0, "error_report: normalizer must be positive");
  std::vector<double> diff(estimate.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = estimate[i] - truth[i];
  ErrorReport r;
  r.normalizer = normalizer;
  for (double p : ps) {
    if (std::isinf(p)) continue;
    r.lp_errors[p] = lp_norm(diff, weights, p);
    r.normalized[p] = normalizer * r.lp_errors[p];
  }
  r.sup_error = lp_norm(diff, weights, kSupNorm);
  r.normalized_sup = normalizer * r.sup_error;
  return r;
}

ErrorReport bias_variance_decompose(const std::vector<std::vector<double>>& replicated,
                                    std::span<const double> truth) {
  require(replicated.size() >= 2, "bias_variance_decompose: need at least 2 replications");
  const std::size_t g = truth.size();
  for (const auto& r : replicated)
    require(r.size() == g, "bias_variance_decompose: replication length differs from truth");
  const double m = static_cast<double>(replicated.size());
  ErrorReport out;
  out.pointwise_bias.assign(g, 0.0);
  out.pointwise_variance.assign(g, 0.0);
  for (std::size_t i = 0; i < g; ++i) {
    double mean = 0.0;
    for (const auto& r : replicated) mean += r[i];
    mean /= m;
    double ss = 0.0;
    for (const auto& r : replicated) ss += (r[i] - mean) * (r[i] - mean);
    out.pointwise_bias[i] = mean - truth[i];
    out.pointwise_variance[i] = ss / (m - 1.0);
  }
  return out;
}

nlohmann::json to_json(const ErrorReport& report) {
  nlohmann::json j;
  nlohmann::json lp = nlohmann::json::array();
  for (const auto& [p, e] : report.lp_errors)
    lp.push_back({{"p", p}, {"error", e}, {"normalized_error", report.normalized.at(p)}});
  j["lp_errors"] = lp;
  j["sup_error"] = report.sup_error;
  j["normalized_sup_error"] = report.normalized_sup;
  j["normalizer"] = report.normalizer;
  if (!report.pointwise_bias.empty()) {
    j["pointwise_bias"] = report.pointwise_bias;
    j["pointwise_variance"] = report.pointwise_variance;
  }
  return j;
}

std::string to_csv(const ErrorReport& report) {
  CsvTable table({"p", "error", "normalized_error"});
  for (const auto& [p, e] : report.lp_errors) table.add_row({p, e, report.normalized.at(p)});
  table.add_row({kSupNorm, report.sup_error, report.normalized_sup});
  return table.to_string();
}

}  // namespace wwkde
