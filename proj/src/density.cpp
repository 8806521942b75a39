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

#include "wwkde/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "wwkde/error.hpp"
#include "wwkde/quadrature.hpp"

namespace wwkde {

namespace {

// Standard-normal tail mass beyond 7 sigma is 2.6e-12 per axis.
constexpr double kGaussianReach = 7.0;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double isotropic_normal_pdf(std::span<const double> x, std::span<const double> mean,
                            double sigma) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = (x[i] - (mean.empty() ? 0.0 : mean[i])) / sigma;
    r2 += z * z;
  }
  const double d = static_cast<double>(x.size());
  return std::exp(-0.5 * r2) / std::pow(std::sqrt(2.0 * std::numbers::pi) * sigma, d);
}

}  // namespace

std::string to_string(DensityFamily family) {
  switch (family) {
    case DensityFamily::gaussian: return "gaussian";
    case DensityFamily::gaussian_mixture: return "gaussian_mixture";
    case DensityFamily::smooth_bump: return "smooth_bump";
    case DensityFamily::triangular: return "triangular";
  }
  return "gaussian";
}

DensityFamily density_family_from_string(const std::string& name) {
  if (name == "gaussian") return DensityFamily::gaussian;
  if (name == "gaussian_mixture") return DensityFamily::gaussian_mixture;
  if (name == "smooth_bump") return DensityFamily::smooth_bump;
  if (name == "triangular") return DensityFamily::triangular;
  throw ConfigError("unknown density family '" + name + "'");
}

TestDensity::TestDensity(DensitySpec spec) : spec_(std::move(spec)) {
  const int d = spec_.dim;
  require(d >= 1, "density dimension must be positive");
  lower_.assign(d, -1.0);
  upper_.assign(d, 1.0);
  switch (spec_.family) {
    case DensityFamily::gaussian: {
      require(spec_.sigma > 0.0, "gaussian sigma must be positive");
      require(spec_.mean.empty() || static_cast<int>(spec_.mean.size()) == d,
              "gaussian mean has the wrong dimension");
      for (int i = 0; i < d; ++i) {
        const double mu = spec_.mean.empty() ? 0.0 : spec_.mean[i];
        lower_[i] = mu - kGaussianReach * spec_.sigma;
        upper_[i] = mu + kGaussianReach * spec_.sigma;
      }
      break;
    }
    case DensityFamily::gaussian_mixture: {
      require(!spec_.components.empty(), "mixture needs at least one component");
      double total = 0.0;
      for (int i = 0; i < d; ++i) {
        lower_[i] = std::numeric_limits<double>::infinity();
        upper_[i] = -std::numeric_limits<double>::infinity();
      }
      for (const auto& c : spec_.components) {
        require(c.weight >= 0.0, "mixture weights must be nonnegative");
        require(c.sigma > 0.0, "mixture sigma must be positive");
        require(static_cast<int>(c.mean.size()) == d,
                "mixture component mean has the wrong dimension");
        total += c.weight;
        for (int i = 0; i < d; ++i) {
          lower_[i] = std::min(lower_[i], c.mean[i] - kGaussianReach * c.sigma);
          upper_[i] = std::max(upper_[i], c.mean[i] + kGaussianReach * c.sigma);
        }
      }
      require(std::abs(total - 1.0) <= 1e-12, "mixture weights must sum to 1");
      break;
    }
    case DensityFamily::smooth_bump: {
      bump_norm_ = 1.0 / integrate_1d(
                             [](double t) { return std::exp(-1.0 / (1.0 - t * t)); },
                             -1.0, 1.0, 32, 64);
      break;
    }
    case DensityFamily::triangular:
      spec_.smoothness = SmoothnessClass(1.0, spec_.smoothness.holder_const);
      break;
  }
}

double TestDensity::bump_profile(double t) const {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return bump_norm_ * std::exp(-1.0 / (1.0 - t * t));
}

double TestDensity::pdf(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == spec_.dim, "pdf: point has the wrong dimension");
  switch (spec_.family) {
    case DensityFamily::gaussian:
      return isotropic_normal_pdf(x, spec_.mean, spec_.sigma);
    case DensityFamily::gaussian_mixture: {
      double s = 0.0;
      for (const auto& c : spec_.components)
        s += c.weight * isotropic_normal_pdf(x, c.mean, c.sigma);
      return s;
    }
    case DensityFamily::smooth_bump: {
      double v = 1.0;
      for (double t : x) v *= bump_profile(t);
      return v;
    }
    case DensityFamily::triangular: {
      double v = 1.0;
      for (double t : x) v *= std::max(0.0, 1.0 - std::abs(t));
      return v;
    }
  }
  return 0.0;
}

double TestDensity::sample_bump_axis(Philox4x32& rng) const {
  // Rejection from the uniform envelope at the peak value exp(-1).
  const double peak = bump_norm_ * std::exp(-1.0);
  for (;;) {
    const double t = 2.0 * rng.uniform() - 1.0;
    if (rng.uniform() * peak < bump_profile(t)) return t;
  }
}

void TestDensity::sample(Philox4x32& rng, std::span<double> out) const {
  const int d = spec_.dim;
  switch (spec_.family) {
    case DensityFamily::gaussian: {
      std::normal_distribution<double> normal(0.0, spec_.sigma);
      for (int i = 0; i < d; ++i)
        out[i] = (spec_.mean.empty() ? 0.0 : spec_.mean[i]) + normal(rng);
      return;
    }
    case DensityFamily::gaussian_mixture: {
      const double u = rng.uniform();
      double acc = 0.0;
      const MixtureComponent* chosen = &spec_.components.back();
      for (const auto& c : spec_.components) {
        acc += c.weight;
        if (u < acc) {
          chosen = &c;
          break;
        }
      }
      std::normal_distribution<double> normal(0.0, chosen->sigma);
      for (int i = 0; i < d; ++i) out[i] = chosen->mean[i] + normal(rng);
      return;
    }
    case DensityFamily::smooth_bump:
      for (int i = 0; i < d; ++i) out[i] = sample_bump_axis(rng);
      return;
    case DensityFamily::triangular:
      for (int i = 0; i < d; ++i) out[i] = rng.uniform() + rng.uniform() - 1.0;
      return;
  }
}

double TestDensity::cdf(double x) const {
  require(spec_.dim == 1, "cdf is only defined for one-dimensional densities");
  switch (spec_.family) {
    case DensityFamily::gaussian: {
      const double mu = spec_.mean.empty() ? 0.0 : spec_.mean[0];
      return normal_cdf((x - mu) / spec_.sigma);
    }
    case DensityFamily::gaussian_mixture: {
      double s = 0.0;
      for (const auto& c : spec_.components)
        s += c.weight * normal_cdf((x - c.mean[0]) / c.sigma);
      return s;
    }
    case DensityFamily::smooth_bump:
      if (x <= -1.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return integrate_1d([this](double t) { return bump_profile(t); }, -1.0, x, 32, 8);
    case DensityFamily::triangular:
      if (x <= -1.0) return 0.0;
      if (x >= 1.0) return 1.0;
      if (x <= 0.0) return 0.5 * (x + 1.0) * (x + 1.0);
      return 1.0 - 0.5 * (1.0 - x) * (1.0 - x);
  }
  return 0.0;
}

TestDensity make_test_density(const DensitySpec& spec) { return TestDensity(spec); }

}  // namespace wwkde
