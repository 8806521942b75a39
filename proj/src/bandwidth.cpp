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

#include "wwkde/bandwidth.hpp"

#include <cmath>
#include <limits>

#include "wwkde/error.hpp"

namespace wwkde {

namespace {

void check_schedule(const BandwidthSchedule& s) {
  require(s.c2 > 0.0 && std::isfinite(s.c2), "bandwidth c2 must be positive");
  require(s.beta > 0.0 && std::isfinite(s.beta), "smoothness beta must be positive");
  require(s.dim >= 1, "dimension must be positive");
  require(s.log_gamma >= 0.0, "log correction gamma must be nonnegative");
  require(!s.exponent_override || *s.exponent_override >= 0.0,
          "bandwidth exponent must be nonnegative");
}

double log_bandwidth(const BandwidthSchedule& s, std::uint64_t k) {
  const double lk = std::log(static_cast<double>(k));
  double out = std::log(s.c2) - s.exponent() * lk;
  if (k >= 2 && s.log_gamma > 0.0) out += s.log_gamma * std::log(lk);
  return out;
}

// Running sums of h_k^{-d} and h_k^beta, switching to a scaled (log-domain)
// representation once a term leaves the comfortable double range.
class LogSum {
 public:
  void add_log(double log_term) {
    if (log_term > log_scale_) {
      sum_ = sum_ * std::exp(log_scale_ - log_term) + 1.0;
      log_scale_ = log_term;
    } else {
      sum_ += std::exp(log_term - log_scale_);
    }
  }
  double log_value() const { return log_scale_ + std::log(sum_); }

 private:
  double log_scale_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace

SmoothnessClass::SmoothnessClass(double beta_, double holder_const_)
    : beta(beta_), holder_const(holder_const_) {
  require(beta > 0.0 && std::isfinite(beta), "smoothness beta must be positive");
  require(holder_const > 0.0, "Hoelder constant must be positive");
}

int SmoothnessClass::integer_part() const {
  return static_cast<int>(std::floor(beta));
}

double SmoothnessClass::fractional_part() const { return beta - integer_part(); }

BandwidthSchedule::BandwidthSchedule(double c2_, double beta_, int dim_,
                                     double log_gamma_)
    : c2(c2_), beta(beta_), dim(dim_), log_gamma(log_gamma_) {
  check_schedule(*this);
}

double BandwidthSchedule::exponent() const {
  return exponent_override.value_or(1.0 / (2.0 * beta + dim));
}

double bandwidth_at(const BandwidthSchedule& s, std::uint64_t k) {
  require(k >= 1, "bandwidth index k must be at least 1");
  check_schedule(s);
  if (k == 1) return s.c2;
  double h = s.c2 * std::pow(static_cast<double>(k), -s.exponent());
  if (s.log_gamma > 0.0)
    h *= std::pow(std::log(static_cast<double>(k)), s.log_gamma);
  return h;
}

BandwidthTable::BandwidthTable(const BandwidthSchedule& s, std::uint64_t n_max) {
  h_.resize(n_max);
  inv_h_d_.resize(n_max);
  for (std::uint64_t k = 1; k <= n_max; ++k) {
    h_[k - 1] = bandwidth_at(s, k);
    inv_h_d_[k - 1] = std::pow(h_[k - 1], -s.dim);
  }
}

double normalizer(std::uint64_t n, double beta, int dim) {
  require(n >= 1, "normalizer: n must be at least 1");
  require(beta > 0.0, "normalizer: beta must be positive");
  require(dim >= 1, "normalizer: dimension must be positive");
  return std::pow(static_cast<double>(n), beta / (2.0 * beta + dim));
}

std::vector<double> target_functional_path(const BandwidthSchedule& s,
                                           std::uint64_t n_max) {
  check_schedule(s);
  std::vector<double> out;
  out.reserve(n_max);
  double variance_sum = 0.0;
  double bias_sum = 0.0;
  bool log_domain = false;
  LogSum log_variance, log_bias;
  constexpr double kLogLimit = 600.0;
  for (std::uint64_t k = 1; k <= n_max; ++k) {
    const double log_h = log_bandwidth(s, k);
    const double log_var_term = -s.dim * log_h;
    const double log_bias_term = s.beta * log_h;
    log_variance.add_log(log_var_term);
    log_bias.add_log(log_bias_term);
    if (!log_domain) {
      if (std::abs(log_var_term) > kLogLimit || std::abs(log_bias_term) > kLogLimit) {
        log_domain = true;
      } else {
        variance_sum += std::exp(log_var_term);
        bias_sum += std::exp(log_bias_term);
      }
    }
    const double n = static_cast<double>(k);
    if (log_domain) {
      const double a = log_variance.log_value() - 2.0 * std::log(n);
      const double b = 2.0 * (log_bias.log_value() - std::log(n));
      const double hi = std::max(a, b);
      out.push_back(std::exp(hi) * (std::exp(a - hi) + std::exp(b - hi)));
    } else {
      out.push_back((variance_sum + bias_sum * bias_sum) / (n * n));
    }
  }
  return out;
}

double target_functional(const BandwidthSchedule& s, std::uint64_t n) {
  require(n >= 1, "target_functional: n must be at least 1");
  return target_functional_path(s, n).back();
}

double bias_bound(const BandwidthSchedule& s, std::uint64_t n, double c1) {
  require(n >= 1, "bias_bound: n must be at least 1");
  require(c1 > 0.0, "bias_bound: c1 must be positive");
  check_schedule(s);
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= n; ++k) sum += std::pow(bandwidth_at(s, k), s.beta);
  return c1 * sum / static_cast<double>(n);
}

}  // namespace wwkde
