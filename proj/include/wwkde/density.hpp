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
#include <string>
#include <vector>

#include "wwkde/bandwidth.hpp"
#include "wwkde/rng.hpp"

namespace wwkde {

enum class DensityFamily { gaussian, gaussian_mixture, smooth_bump, triangular };

std::string to_string(DensityFamily family);
DensityFamily density_family_from_string(const std::string& name);

struct MixtureComponent {
  double weight = 1.0;
  std::vector<double> mean;
  double sigma = 1.0;
};

/// Parameters accepted by make_test_density. Fields irrelevant to the
/// chosen family are ignored.
struct DensitySpec {
  DensityFamily family = DensityFamily::gaussian;
  int dim = 1;
  std::vector<double> mean;  ///< gaussian; empty means the origin
  double sigma = 1.0;        ///< gaussian
  std::vector<MixtureComponent> components;  ///< gaussian_mixture
  /// Declared smoothness for the C-infinity families; triangular is
  /// always beta = 1.
  SmoothnessClass smoothness{2.0, 1.0};
};

/// Known density with exact evaluation and an exact sampler.
///
/// gaussian: isotropic N(mean, sigma^2 I). gaussian_mixture: isotropic
/// components. smooth_bump: product of c*exp(-1/(1-t^2)) on [-1, 1].
/// triangular: product of (1 - |t|) on [-1, 1].
class TestDensity {
 public:
  explicit TestDensity(DensitySpec spec);

  int dim() const { return spec_.dim; }
  DensityFamily family() const { return spec_.family; }
  const DensitySpec& spec() const { return spec_; }
  const SmoothnessClass& smoothness() const { return spec_.smoothness; }

  double pdf(std::span<const double> x) const;

  /// Writes one draw into `out` (size dim()).
  void sample(Philox4x32& rng, std::span<double> out) const;

  /// Box holding at least 1 - 1e-9 of the mass.
  const std::vector<double>& support_lower() const { return lower_; }
  const std::vector<double>& support_upper() const { return upper_; }

  /// CDF of a one-dimensional density; ContractError when dim() > 1.
  double cdf(double x) const;

 private:
  double bump_profile(double t) const;
  double sample_bump_axis(Philox4x32& rng) const;

  DensitySpec spec_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  double bump_norm_ = 0.0;
};

TestDensity make_test_density(const DensitySpec& spec);

}  // namespace wwkde
