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

#include "wwkde/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wwkde {

namespace {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
  double map(double v, double px_lo, double px_hi) const {
    const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return px_lo + t * (px_hi - px_lo);
  }
};

Axis make_axis(const std::vector<const std::vector<double>*>& data, bool log) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto* v : data)
    for (double x : *v) {
      if (!std::isfinite(x) || (log && x <= 0.0)) continue;
      const double t = log ? std::log10(x) : x;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  }
  if (hi <= lo) hi = lo + 1.0;
  return {lo, hi, log};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  const double left = 70, right = spec.width - 20.0, top = 40, bottom = spec.height - 50.0;
  std::vector<const std::vector<double>*> xs, ys;
  for (const auto& s : spec.series) xs.push_back(&s.x), ys.push_back(&s.y);
  const Axis ax = make_axis(xs, spec.log_x);
  const Axis ay = make_axis(ys, spec.log_y);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
      << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";

  auto ticks = [](const Axis& a) {
    std::vector<double> t;
    if (a.log) {
      for (double e = a.lo; e <= a.hi + 1e-9; e += 1.0) t.push_back(std::pow(10.0, e));
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(a.lo + (a.hi - a.lo) * i / 5.0);
    }
    return t;
  };
  for (double t : ticks(ax)) {
    const double px = ax.map(t, left, right);
    out << "<line x1=\"" << px << "\" y1=\"" << bottom << "\" x2=\"" << px << "\" y2=\""
        << bottom + 5 << "\" stroke=\"black\"/>";
    out << "<text x=\"" << px << "\" y=\"" << bottom + 18 << "\" text-anchor=\"middle\">"
        << fmt(t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double py = ay.map(t, bottom, top);
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << py << "\" x2=\"" << left << "\" y2=\""
        << py << "\" stroke=\"black\"/>";
    out << "<text x=\"" << left - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
        << fmt(t) << "</text>\n";
  }
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << spec.height - 12
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << (top + bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (top + bottom) / 2 << ")\">" << escape(spec.y_label) << "</text>\n";

  int legend_row = 0;
  for (const auto& s : spec.series) {
    std::ostringstream pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      const double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0)) continue;
      const double px = ax.map(x, left, right);
      const double py = ay.map(y, bottom, top);
      if (s.line) {
        pts << px << ',' << py << ' ';
      } else {
        out << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3\" fill=\"" << s.color
            << "\"/>\n";
      }
    }
    if (s.line)
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\""
          << pts.str() << "\"/>\n";
    if (!s.label.empty()) {
      const double ly = top + 16 + 16 * legend_row++;
      out << "<rect x=\"" << right - 150 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
          << s.color << "\"/><text x=\"" << right - 135 << "\" y=\"" << ly << "\">"
          << escape(s.label) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace wwkde
