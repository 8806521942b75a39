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

#include <functional>
#include <span>
#include <vector>

namespace wwkde {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n; exact for polynomials of degree 2n - 1.
GaussLegendreRule gauss_legendre(int num_nodes);

/// Tensor-product integral of `f` over the box [lower, upper] using the
/// same one-dimensional rule on every axis.
double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> lower,
                     std::span<const double> upper, int nodes_per_axis);

/// Composite one-dimensional rule: `panels` equal sub-intervals of [a, b].
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int nodes_per_panel = 32, int panels = 1);

}  // namespace wwkde
