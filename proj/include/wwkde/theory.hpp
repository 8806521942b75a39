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

#include <cstdint>
#include <functional>
#include <vector>

namespace wwkde {

/// Constants of the exponential tail bounds. None of them is determined by
/// the theory beyond existence; all default to 1 and can be calibrated.
struct TailConstants {
  double c4 = 1.0;          ///< pointwise upper bound
  double c14 = 1.0;         ///< pointwise lower bound
  double c8 = 1.0;          ///< L_p upper bound
  double c_two_regime = 1.0;  ///< inside both exponents of the two-regime bound
  double c_sum = 1.0;       ///< sup-error series bound
};

/// Smoothness index and dimension plus the derived exponents:
///   q  = (2 beta + d) / beta        growth of phi beyond the regime boundary
///   q* = (2 beta + d) / (beta + d)  tail exponent, the Hoelder conjugate of q
///   m(n) = n^(beta / (2 beta + d))  regime boundary, equal to B_n
class TailModel {
 public:
  TailModel(double beta, int dim, TailConstants constants = {});

  double beta() const { return beta_; }
  int dim() const { return dim_; }
  const TailConstants& constants() const { return constants_; }

  double exponent_q() const { return (2.0 * beta_ + dim_) / beta_; }
  double exponent_qstar() const { return (2.0 * beta_ + dim_) / (beta_ + dim_); }
  double regime_m(std::uint64_t n) const;

  /// C14 >= C4 is needed for the lower bound to sit below the upper one.
  bool lower_constant_consistent() const { return constants_.c14 >= constants_.c4; }

 private:
  double beta_;
  int dim_;
  TailConstants constants_;
};

/// A bound together with a flag telling whether the argument lay outside
/// the range where the bound is stated (it is then extrapolated or vacuous).
struct BoundValue {
  double probability = 1.0;
  bool outside_stated_range = false;
};

/// lambda^2 for |lambda| <= m, |lambda|^q beyond. m may be +infinity.
double phi_piecewise(double m, double q, double lambda);
double phi(const TailModel& tm, std::uint64_t n, double lambda);

/// sup_lambda (lambda u - phi(lambda)) in closed form, for the same
/// piecewise phi. The outer branch only contributes through its interior
/// stationary point, since phi jumps upward at |lambda| = m.
double phi_conjugate_piecewise(double m, double q, double u);
double phi_conjugate(const TailModel& tm, std::uint64_t n, double u);

struct SearchSettings {
  /// Upper end of the initial search interval; 0 picks 1 + |u|.
  double lambda_max = 0.0;
  int grid_points = 4096;
  int max_widenings = 12;
};

/// Numerical Young-Fenchel conjugate sup_{lambda >= 0} (lambda |u| - f(lambda))
/// for an even f: coarse grid scan, then golden-section refinement around
/// the best grid cell. Widens the interval (x4) while the maximiser sits on
/// its right edge; throws NumericalError if it still does after
/// max_widenings attempts.
double fenchel_conjugate(const std::function<double(double)>& f, double u,
                         const SearchSettings& search = {});

/// 2 exp(-C4 u^q*), capped at 1; flagged for u < 1.
BoundValue tail_upper(const TailModel& tm, double u);

/// exp(-c u^2) below the regime boundary m(n), and beyond it
/// exp(-c (u^q* + m^2 - m^q*)), which meets the inner branch at u = m.
double tail_two_regime(const TailModel& tm, std::uint64_t n, double u);

/// 2 exp(-C14 u^q*); same shape as tail_upper.
BoundValue tail_lower(const TailModel& tm, double u);

/// exp(-C8 (u - c3)^q*) for u >= c3; 1 and flagged below.
BoundValue lp_tail_upper(const TailModel& tm, double u, double c3);

struct ConfidenceRadius {
  double u_star = 0.0;      ///< tail_upper(u_star) == alpha
  double normalizer = 1.0;  ///< B_n
  double radius = 0.0;      ///< u_star / B_n
  double half_width = 0.0;  ///< (u_star + c3) / B_n, bias allowance included
  bool outside_stated_range = false;  ///< u_star < 1
};

/// Pointwise band [f_n(x) - half_width, f_n(x) + half_width] at level alpha.
ConfidenceRadius confidence_radius(const TailModel& tm, std::uint64_t n, double alpha,
                                   double c3 = 0.0);

struct ConvergenceTerms {
  std::vector<double> terms;  ///< Delta_n(v) for n = 1..n_max
  double partial_sum = 0.0;
  double series_bound = 0.0;   ///< c_sum * v^(-q)
};

/// Delta_n(v) = exp(-n^(beta/(beta+d)) v^q*) and the sup-error series bound.
ConvergenceTerms as_convergence_terms(const TailModel& tm, double v, std::uint64_t n_max);

}  // namespace wwkde
