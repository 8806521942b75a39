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

#include "wwkde/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "wwkde/error.hpp"

namespace wwkde {

GaussLegendreRule gauss_legendre(int num_nodes) {
  require(num_nodes >= 1, "gauss_legendre: need at least one node");
  const int n = num_nodes;
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> lower,
                     std::span<const double> upper, int nodes_per_axis) {
  require(lower.size() == upper.size() && !lower.empty(),
          "integrate_box: bounds must have equal positive dimension");
  require(nodes_per_axis >= 1, "integrate_box: need at least one node");
  const std::size_t dim = lower.size();
  const auto rule = gauss_legendre(nodes_per_axis);
  std::vector<double> half_width(dim), mid(dim);
  double jacobian = 1.0;
  for (std::size_t a = 0; a < dim; ++a) {
    half_width[a] = 0.5 * (upper[a] - lower[a]);
    mid[a] = 0.5 * (upper[a] + lower[a]);
    jacobian *= half_width[a];
  }

  std::vector<int> index(dim, 0);
  std::vector<double> x(dim);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (std::size_t a = 0; a < dim; ++a) {
      x[a] = mid[a] + half_width[a] * rule.nodes[index[a]];
      w *= rule.weights[index[a]];
    }
    total += w * f(x);
    std::size_t a = 0;
    while (a < dim && ++index[a] == nodes_per_axis) index[a++] = 0;
    if (a == dim) break;
  }
  return total * jacobian;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int nodes_per_panel, int panels) {
  require(panels >= 1, "integrate_1d: need at least one panel");
  const auto rule = gauss_legendre(nodes_per_panel);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    total += 0.5 * width * s;
  }
  return total;
}

}  // namespace wwkde
