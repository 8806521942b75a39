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

#include <string>
#include <vector>

namespace wwkde {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool line = false;  ///< polyline instead of markers
  std::string color = "#1f77b4";
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = true;
  bool log_y = true;
  int width = 640;
  int height = 480;
  std::vector<PlotSeries> series;
};

/// Self-contained SVG document. Non-positive values are dropped on log axes.
std::string render_svg(const PlotSpec& spec);

}  // namespace wwkde
