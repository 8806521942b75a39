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

#include "wwkde/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wwkde/bandwidth.hpp"
#include "wwkde/error.hpp"

namespace wwkde {

TailModel::TailModel(double beta, int dim, TailConstants constants)
    : beta_(beta), dim_(dim), constants_(constants) {
  require(beta > 0.0 && std::isfinite(beta), "tail model: beta must be positive");
  require(dim >= 1, "tail model: dimension must be positive");
  for (double c : {constants.c4, constants.c14, constants.c8, constants.c_two_regime,
                   constants.c_sum})
    require(c > 0.0 && std::isfinite(c), "tail model: constants must be positive");
}

double TailModel::regime_m(std::uint64_t n) const { return normalizer(n, beta_, dim_); }

double phi_piecewise(double m, double q, double lambda) {
  const double a = std::abs(lambda);
  return a <= m ? a * a : std::pow(a, q);
}

double phi(const TailModel& tm, std::uint64_t n, double lambda) {
  return phi_piecewise(tm.regime_m(n), tm.exponent_q(), lambda);
}

double phi_conjugate_piecewise(double m, double q, double u) {
  const double a = std::abs(u);
  const double inner = (0.5 * a <= m) ? 0.25 * a * a : m * a - m * m;
  if (!std::isfinite(m)) return inner;
  const double stationary = std::pow(a / q, 1.0 / (q - 1.0));
  if (stationary <= m) return inner;
  const double outer = stationary * a * (1.0 - 1.0 / q);
  return std::max(inner, outer);
}

double phi_conjugate(const TailModel& tm, std::uint64_t n, double u) {
  return phi_conjugate_piecewise(tm.regime_m(n), tm.exponent_q(), u);
}

double fenchel_conjugate(const std::function<double(double)>& f, double u,
                         const SearchSettings& search) {
  require(search.grid_points >= 4, "fenchel_conjugate: need at least 4 grid points");
  const double a = std::abs(u);
  double lambda_max = search.lambda_max > 0.0 ? search.lambda_max : 1.0 + a;
  auto objective = [&](double lambda) { return lambda * a - f(lambda); };

  for (int attempt = 0; attempt <= search.max_widenings; ++attempt) {
    const int g = search.grid_points;
    const double step = lambda_max / g;
    int best = 0;
    double best_value = objective(0.0);
    for (int i = 1; i <= g; ++i) {
      const double v = objective(i * step);
      if (v > best_value) best_value = v, best = i;
    }
    if (best == g) {
      lambda_max *= 4.0;
      continue;
    }
    double lo = std::max(0.0, (best - 1) * step);
    double hi = (best + 1) * step;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    double fc = objective(c);
    double fd = objective(d);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      if (fc > fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - ratio * (hi - lo);
        fc = objective(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + ratio * (hi - lo);
        fd = objective(d);
      }
    }
    return std::max({best_value, fc, fd, objective(0.5 * (lo + hi))});
  }
  std::ostringstream msg;
  msg << "fenchel_conjugate: supremum for u = " << u << " not bracketed below lambda = "
      << lambda_max / 4.0;
  throw NumericalError(msg.str());
}

BoundValue tail_upper(const TailModel& tm, double u) {
  BoundValue out;
  out.outside_stated_range = u < 1.0;
  if (u <= 0.0) return out;
  out.probability =
      std::min(1.0, 2.0 * std::exp(-tm.constants().c4 * std::pow(u, tm.exponent_qstar())));
  return out;
}

double tail_two_regime(const TailModel& tm, std::uint64_t n, double u) {
  if (u <= 0.0) return 1.0;
  const double c = tm.constants().c_two_regime;
  const double m = tm.regime_m(n);
  const double qs = tm.exponent_qstar();
  if (u < m) return std::min(1.0, std::exp(-c * u * u));
  return std::min(1.0, std::exp(-c * (std::pow(u, qs) + m * m - std::pow(m, qs))));
}

BoundValue tail_lower(const TailModel& tm, double u) {
  BoundValue out;
  out.outside_stated_range = u < 1.0;
  if (u <= 0.0) return out;
  out.probability =
      std::min(1.0, 2.0 * std::exp(-tm.constants().c14 * std::pow(u, tm.exponent_qstar())));
  return out;
}

BoundValue lp_tail_upper(const TailModel& tm, double u, double c3) {
  BoundValue out;
  if (u < c3) {
    out.outside_stated_range = true;
    return out;
  }
  out.probability = std::exp(-tm.constants().c8 * std::pow(u - c3, tm.exponent_qstar()));
  return out;
}

ConfidenceRadius confidence_radius(const TailModel& tm, std::uint64_t n, double alpha,
                                   double c3) {
  require(alpha > 0.0 && alpha < 1.0, "confidence level alpha must lie in (0, 1)");
  require(c3 >= 0.0, "bias allowance c3 must be nonnegative");
  ConfidenceRadius out;
  out.u_star = std::pow(std::log(2.0 / alpha) / tm.constants().c4, 1.0 / tm.exponent_qstar());
  out.normalizer = normalizer(n, tm.beta(), tm.dim());
  out.radius = out.u_star / out.normalizer;
  out.half_width = (out.u_star + c3) / out.normalizer;
  out.outside_stated_range = out.u_star < 1.0;
  return out;
}

ConvergenceTerms as_convergence_terms(const TailModel& tm, double v, std::uint64_t n_max) {
  require(v >= 1.0, "as_convergence_terms: v must be at least 1");
  require(n_max >= 1, "as_convergence_terms: n_max must be at least 1");
  const double beta = tm.beta();
  const double d = tm.dim();
  const double vq = std::pow(v, tm.exponent_qstar());
  ConvergenceTerms out;
  out.terms.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double term = std::exp(-std::pow(static_cast<double>(n), beta / (beta + d)) * vq);
    out.terms.push_back(term);
    out.partial_sum += term;
  }
  out.series_bound = tm.constants().c_sum * std::pow(v, -tm.exponent_q());
  return out;
}

}  // namespace wwkde
