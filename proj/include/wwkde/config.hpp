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

#include <nlohmann/json.hpp>

#include "wwkde/simulate.hpp"

namespace wwkde {

/// Parses a kernel block {family, dim, order, truncation_radius}.
KernelConfig kernel_config_from_json(const nlohmann::json& j);

/// Parses an experiment document. Unknown top-level keys are rejected so
/// that typos do not silently fall back to defaults.
///
///   density:    {family, dim, mean, sigma, components: [{weight, mean, sigma}]}
///   kernel:     {family, dim, order, truncation_radius}
///   bandwidth:  {c2, gamma, exponent}
///   smoothness: {beta, L}
///   grid:       {type: "point", x0} | {type: "box", lower, upper, cells,
///                measure: "lebesgue" | "probability"}
///   n_values, replications, seed, target, statistic: {kind, p}
///   tail:       {center: "mean" | "truth", u_points, u_max}
///   theory:     {c4, c14, c8, c_two_regime, c_sum, c3, c4_max}
///   acceptance: {slope_tolerance, exponent_tolerance}
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

}  // namespace wwkde
