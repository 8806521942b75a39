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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wwkde {

enum class KernelFamily { gaussian, epanechnikov, orthogonal, custom };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

/// A symmetric smoothing kernel on R^d.
///
/// The built-in families are products of a one-dimensional profile, so
/// `support_radius` is measured in the max-norm: K(x) = 0 whenever some
/// |x_i| exceeds it. `order` is the largest total degree |m| for which all
/// moments of multi-degree 1..order vanish.
///
/// Instances are immutable and can be shared across threads.
class KernelSpec {
 public:
  using Rule = std::function<double(std::span<const double>)>;

  static KernelSpec gaussian(int dim);
  static KernelSpec epanechnikov(int dim);

  /// Caller-supplied evaluation rule; nothing about it is verified here
  /// (that is what validate_kernel is for).
  static KernelSpec custom(int dim, int order,
                           std::optional<double> support_radius,
                           double sup_bound, Rule rule);

  int dim() const { return dim_; }
  int order() const { return order_; }
  KernelFamily family() const { return family_; }
  std::optional<double> support_radius() const { return support_radius_; }
  double sup_bound() const { return sup_bound_; }

  /// K(x). Throws ContractError when x.size() != dim().
  double operator()(std::span<const double> x) const;

  /// K(x) without the dimension check; `x` must hold dim() values.
  double eval_unchecked(const double* x) const;

  /// One-dimensional profile k1 for the product families.
  double profile(double t) const;

  /// Legendre coefficients c_j of q in k1(t) = (1 - t^2) q(t), with
  /// q = sum_j c_j P_{2j}. Empty unless family() == orthogonal.
  const std::vector<double>& legendre_coefficients() const {
    return legendre_coeffs_;
  }

 private:
  friend KernelSpec build_orthogonal_kernel(int dim, int order);

  KernelSpec() = default;

  KernelFamily family_ = KernelFamily::custom;
  int dim_ = 1;
  int order_ = 0;
  std::optional<double> support_radius_;
  double sup_bound_ = 0.0;
  double gaussian_norm_ = 0.0;
  std::vector<double> legendre_coeffs_;
  Rule rule_;
};

double eval_kernel(const KernelSpec& k, std::span<const double> x);

/// Product kernel k1(x_1)...k1(x_d) with k1(t) = (1 - t^2) q(t) on [-1, 1]
/// and q an even polynomial of degree 2*floor(order/2), chosen so that
/// int k1 = 1 and the moments 1..order vanish. order <= 1 gives Epanechnikov.
KernelSpec build_orthogonal_kernel(int dim, int order);

struct QuadratureSettings {
  int nodes_per_axis = 64;
  /// Integration radius used when the kernel has unbounded support.
  double truncation_radius = 10.0;
  double tolerance = 1e-8;
  /// Moments are reported up to max(kernel order, this value); pass the
  /// integer part of the smoothness index here.
  int moment_order = 0;
  int symmetry_probes = 256;
};

struct MomentEntry {
  std::vector<int> multi_index;
  double value = 0.0;
  bool required = false;  ///< |m| <= declared order
  bool pass = true;
};

struct ValidationReport {
  double integral = 0.0;
  double integral_sq = 0.0;
  double integral_abs = 0.0;
  double symmetry_defect = 0.0;
  std::vector<MomentEntry> moments;

  bool normalization_ok = false;
  bool symmetry_ok = false;
  bool square_integrable_ok = false;
  bool abs_integrable_ok = false;
  bool moments_ok = false;

  /// Set when the kernel produced a non-finite value; describes where.
  std::optional<std::string> failure;

  bool passed() const {
    return !failure && normalization_ok && symmetry_ok &&
           square_integrable_ok && abs_integrable_ok && moments_ok;
  }
};

ValidationReport validate_kernel(const KernelSpec& k,
                                 const QuadratureSettings& q = {});

/// Every multi-index m in N^dim with 1 <= |m| <= max_degree, graded order.
std::vector<std::vector<int>> multi_indices(int dim, int max_degree);

}  // namespace wwkde
