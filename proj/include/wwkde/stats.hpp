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

#include <span>

namespace wwkde {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  ///< NaN with fewer than 3 points
  std::size_t points = 0;
};

/// Least squares y = intercept + slope x; ordinary unless weights are given.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> weights = {});

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for `successes` out of `trials`.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

}  // namespace wwkde
