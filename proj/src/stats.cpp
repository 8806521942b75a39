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

#include "wwkde/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wwkde/error.hpp"

namespace wwkde {

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> weights) {
  require(x.size() == y.size(), "fit_line: x and y differ in length");
  require(weights.empty() || weights.size() == x.size(), "fit_line: one weight per point");
  require(x.size() >= 2, "fit_line: need at least two points");
  auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
  double sw = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(w(i) > 0.0 && std::isfinite(w(i)), "fit_line: weights must be positive");
    sw += w(i);
    mx += w(i) * x[i];
    my += w(i) * y[i];
  }
  mx /= sw;
  my /= sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w(i) * (x[i] - mx) * (x[i] - mx);
    sxy += w(i) * (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "fit_line: x values are all equal");
  LineFit fit;
  fit.points = x.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() >= 3) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += w(i) * r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (static_cast<double>(x.size()) - 2.0) / sxx);
  } else {
    fit.slope_stderr = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  require(trials > 0, "wilson_interval: need at least one trial");
  require(successes <= trials, "wilson_interval: more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {successes == 0 ? 0.0 : std::max(0.0, center - half),
          successes == trials ? 1.0 : std::min(1.0, center + half)};
}

}  // namespace wwkde
