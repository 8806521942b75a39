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

#include "wwkde/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "wwkde/error.hpp"
#include "wwkde/quadrature.hpp"

namespace wwkde {

namespace {

double legendre_series(const std::vector<double>& even_coeffs, double t) {
  // sum_j c_j P_{2j}(t), running the three-term recurrence through all degrees.
  double p0 = 1.0;
  double p1 = t;
  double sum = even_coeffs.empty() ? 0.0 : even_coeffs[0];
  const int max_degree = 2 * (static_cast<int>(even_coeffs.size()) - 1);
  for (int k = 2; k <= max_degree; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
    if (k % 2 == 0) sum += even_coeffs[k / 2] * p2;
  }
  return sum;
}

double max_abs_profile(const KernelSpec& k) {
  constexpr int kSamples = 20001;
  double best = 0.0;
  double best_t = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double t = -1.0 + 2.0 * i / (kSamples - 1);
    const double v = std::abs(k.profile(t));
    if (v > best) best = v, best_t = t;
  }
  // Golden-section polish inside the winning cell.
  const double h = 2.0 / (kSamples - 1);
  double a = std::max(-1.0, best_t - h);
  double b = std::min(1.0, best_t + h);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double c = b - g * (b - a);
    const double d = a + g * (b - a);
    if (std::abs(k.profile(c)) > std::abs(k.profile(d)))
      b = d;
    else
      a = c;
  }
  return std::max(best, std::abs(k.profile(0.5 * (a + b))));
}

}  // namespace

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::epanechnikov: return "epanechnikov";
    case KernelFamily::orthogonal: return "orthogonal";
    case KernelFamily::custom: return "custom";
  }
  return "custom";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "epanechnikov") return KernelFamily::epanechnikov;
  if (name == "orthogonal") return KernelFamily::orthogonal;
  throw ConfigError("unknown kernel family '" + name + "'");
}

KernelSpec KernelSpec::gaussian(int dim) {
  require(dim >= 1, "kernel dimension must be positive");
  KernelSpec k;
  k.family_ = KernelFamily::gaussian;
  k.dim_ = dim;
  k.order_ = 1;
  k.gaussian_norm_ = std::pow(2.0 * std::numbers::pi, -0.5 * dim);
  k.sup_bound_ = k.gaussian_norm_;
  return k;
}

KernelSpec KernelSpec::epanechnikov(int dim) {
  require(dim >= 1, "kernel dimension must be positive");
  KernelSpec k;
  k.family_ = KernelFamily::epanechnikov;
  k.dim_ = dim;
  k.order_ = 1;
  k.support_radius_ = 1.0;
  k.sup_bound_ = std::pow(0.75, dim);
  return k;
}

KernelSpec KernelSpec::custom(int dim, int order,
                              std::optional<double> support_radius,
                              double sup_bound, Rule rule) {
  require(dim >= 1, "kernel dimension must be positive");
  require(order >= 0, "kernel order must be nonnegative");
  require(!support_radius || *support_radius > 0.0,
          "support radius must be positive");
  require(std::isfinite(sup_bound) && sup_bound > 0.0,
          "sup bound must be positive and finite");
  require(static_cast<bool>(rule), "custom kernel needs an evaluation rule");
  KernelSpec k;
  k.family_ = KernelFamily::custom;
  k.dim_ = dim;
  k.order_ = order;
  k.support_radius_ = support_radius;
  k.sup_bound_ = sup_bound;
  k.rule_ = std::move(rule);
  return k;
}

double KernelSpec::profile(double t) const {
  switch (family_) {
    case KernelFamily::gaussian:
      return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
    case KernelFamily::epanechnikov:
      return std::abs(t) > 1.0 ? 0.0 : 0.75 * (1.0 - t * t);
    case KernelFamily::orthogonal:
      return std::abs(t) > 1.0 ? 0.0
                                : (1.0 - t * t) * legendre_series(legendre_coeffs_, t);
    case KernelFamily::custom:
      break;
  }
  throw ContractError("custom kernels have no one-dimensional profile");
}

double KernelSpec::eval_unchecked(const double* x) const {
  switch (family_) {
    case KernelFamily::gaussian: {
      double r2 = 0.0;
      for (int i = 0; i < dim_; ++i) r2 += x[i] * x[i];
      return gaussian_norm_ * std::exp(-0.5 * r2);
    }
    case KernelFamily::epanechnikov: {
      double v = 1.0;
      for (int i = 0; i < dim_; ++i) {
        const double t = x[i];
        if (t > 1.0 || t < -1.0) return 0.0;
        v *= 0.75 * (1.0 - t * t);
      }
      return v;
    }
    case KernelFamily::orthogonal: {
      double v = 1.0;
      for (int i = 0; i < dim_; ++i) {
        const double t = x[i];
        if (t > 1.0 || t < -1.0) return 0.0;
        v *= (1.0 - t * t) * legendre_series(legendre_coeffs_, t);
      }
      return v;
    }
    case KernelFamily::custom: {
      if (support_radius_) {
        for (int i = 0; i < dim_; ++i)
          if (std::abs(x[i]) > *support_radius_) return 0.0;
      }
      return rule_(std::span<const double>(x, static_cast<std::size_t>(dim_)));
    }
  }
  return 0.0;
}

double KernelSpec::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) {
    std::ostringstream msg;
    msg << "kernel of dimension " << dim_ << " evaluated at a point of dimension "
        << x.size();
    throw ContractError(msg.str());
  }
  return eval_unchecked(x.data());
}

double eval_kernel(const KernelSpec& k, std::span<const double> x) { return k(x); }

KernelSpec build_orthogonal_kernel(int dim, int order) {
  require(dim >= 1, "kernel dimension must be positive");
  require(order >= 0, "kernel order must be nonnegative");
  // Even kernels kill odd moments; only the even ones up to `order` need
  // solving for, one unknown each.
  const int terms = order / 2 + 1;
  const auto rule = gauss_legendre(2 * terms + 2);
  Eigen::MatrixXd system(terms, terms);
  for (int row = 0; row < terms; ++row) {
    for (int col = 0; col < terms; ++col) {
      std::vector<double> unit(col + 1, 0.0);
      unit[col] = 1.0;
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        s += rule.weights[i] * std::pow(t, 2 * row) * (1.0 - t * t) *
             legendre_series(unit, t);
      }
      system(row, col) = s;
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(terms);
  rhs(0) = 1.0;
  const Eigen::VectorXd coeffs = system.fullPivLu().solve(rhs);

  KernelSpec k;
  k.family_ = KernelFamily::orthogonal;
  k.dim_ = dim;
  k.order_ = order;
  k.support_radius_ = 1.0;
  k.legendre_coeffs_.assign(coeffs.data(), coeffs.data() + terms);
  k.sup_bound_ = std::pow(max_abs_profile(k), dim);
  return k;
}

std::vector<std::vector<int>> multi_indices(int dim, int max_degree) {
  std::vector<std::vector<int>> out;
  for (int degree = 1; degree <= max_degree; ++degree) {
    std::vector<int> m(dim, 0);
    // Enumerate compositions of `degree` into `dim` nonnegative parts.
    std::function<void(int, int)> fill = [&](int axis, int remaining) {
      if (axis == dim - 1) {
        m[axis] = remaining;
        out.push_back(m);
        return;
      }
      for (int v = remaining; v >= 0; --v) {
        m[axis] = v;
        fill(axis + 1, remaining - v);
      }
    };
    fill(0, degree);
  }
  return out;
}

ValidationReport validate_kernel(const KernelSpec& k, const QuadratureSettings& q) {
  require(q.nodes_per_axis >= 2, "validate_kernel: need at least 2 nodes per axis");
  require(k.support_radius() || q.truncation_radius > 0.0,
          "validate_kernel: unbounded kernels need a truncation radius");
  const int dim = k.dim();
  const double radius = k.support_radius().value_or(q.truncation_radius);
  const auto rule = gauss_legendre(q.nodes_per_axis);
  const int max_degree = std::max(k.order(), q.moment_order);
  const auto indices = multi_indices(dim, max_degree);

  ValidationReport report;
  report.moments.resize(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    report.moments[j].multi_index = indices[j];
    int total = 0;
    for (int v : indices[j]) total += v;
    report.moments[j].required = total <= k.order();
  }

  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  std::vector<double> moment_sum(indices.size(), 0.0);
  const double jacobian = std::pow(radius, dim);
  for (;;) {
    double w = 1.0;
    for (int a = 0; a < dim; ++a) {
      x[a] = radius * rule.nodes[idx[a]];
      w *= rule.weights[idx[a]];
    }
    const double v = k.eval_unchecked(x.data());
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "non-finite kernel value at (";
      for (int a = 0; a < dim; ++a) msg << (a ? ", " : "") << x[a];
      msg << ")";
      report.failure = msg.str();
      return report;
    }
    report.integral += w * v;
    report.integral_sq += w * v * v;
    report.integral_abs += w * std::abs(v);
    for (std::size_t j = 0; j < indices.size(); ++j) {
      double mono = 1.0;
      for (int a = 0; a < dim; ++a) mono *= std::pow(x[a], indices[j][a]);
      moment_sum[j] += w * mono * v;
    }
    int a = 0;
    while (a < dim && ++idx[a] == q.nodes_per_axis) idx[a++] = 0;
    if (a == dim) break;
  }
  report.integral *= jacobian;
  report.integral_sq *= jacobian;
  report.integral_abs *= jacobian;

  report.moments_ok = true;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    auto& entry = report.moments[j];
    entry.value = moment_sum[j] * jacobian;
    entry.pass = !entry.required || std::abs(entry.value) <= q.tolerance;
    report.moments_ok = report.moments_ok && entry.pass;
  }

  // Symmetry probes: fixed-seed points in the integration box.
  std::mt19937_64 gen(0x5eed5eedULL);
  std::uniform_real_distribution<double> coord(-radius, radius);
  std::vector<double> neg(dim);
  for (int p = 0; p < q.symmetry_probes; ++p) {
    for (int a = 0; a < dim; ++a) {
      x[a] = coord(gen);
      neg[a] = -x[a];
    }
    const double plus = k.eval_unchecked(x.data());
    const double minus = k.eval_unchecked(neg.data());
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      std::ostringstream msg;
      msg << "non-finite kernel value near probe (";
      for (int a = 0; a < dim; ++a) msg << (a ? ", " : "") << x[a];
      msg << ")";
      report.failure = msg.str();
      return report;
    }
    report.symmetry_defect = std::max(report.symmetry_defect, std::abs(plus - minus));
  }

  report.normalization_ok = std::abs(report.integral - 1.0) <= q.tolerance;
  report.symmetry_ok = report.symmetry_defect <= q.tolerance;
  report.square_integrable_ok = std::isfinite(report.integral_sq);
  report.abs_integrable_ok = std::isfinite(report.integral_abs);
  return report;
}

}  // namespace wwkde
