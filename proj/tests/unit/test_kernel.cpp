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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wwkde/error.hpp"
#include "wwkde/kernel.hpp"
#include "wwkde/quadrature.hpp"

using namespace wwkde;

namespace {

double eval1(const KernelSpec& k, double x) { return k(std::span<const double>(&x, 1)); }

}  // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto rule = gauss_legendre(8);
  double w = 0.0;
  for (double v : rule.weights) w += v;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
  for (int p = 0; p <= 15; ++p) {
    const double got = integrate_1d([p](double x) { return std::pow(x, p); }, -1.0, 2.0, 8);
    const double exact = (std::pow(2.0, p + 1) - std::pow(-1.0, p + 1)) / (p + 1);
    CHECK(got == doctest::Approx(exact).epsilon(1e-12));
  }
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 2.0};
  const double box = integrate_box(
      [](std::span<const double> x) { return std::exp(x[0] + x[1]); }, lo, hi, 16);
  CHECK(box == doctest::Approx((std::exp(1.0) - 1.0) * (std::exp(2.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("kernel point values") {
  CHECK(eval1(KernelSpec::gaussian(1), 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
  const auto ep = KernelSpec::epanechnikov(1);
  CHECK(eval1(ep, 2.0) == 0.0);
  CHECK(eval1(ep, 0.5) == doctest::Approx(0.75 * (1.0 - 0.25)).epsilon(1e-15));
  const std::vector<double> two{0.0, 0.0};
  CHECK_THROWS_AS(ep(two), ContractError);
}

TEST_CASE("kernel evaluation is pure") {
  const auto k = build_orthogonal_kernel(2, 3);
  const std::vector<double> x{0.123456789, -0.4};
  const double a = k(x);
  for (int i = 0; i < 10; ++i) CHECK(k(x) == a);
}

TEST_CASE("gaussian and epanechnikov pass validation") {
  QuadratureSettings q;
  q.moment_order = 1;
  for (int d = 1; d <= 2; ++d) {
    for (const auto& k : {KernelSpec::gaussian(d), KernelSpec::epanechnikov(d)}) {
      const auto r = validate_kernel(k, q);
      CHECK(r.passed());
      CHECK(std::abs(r.integral - 1.0) <= 1e-8);
      for (const auto& m : r.moments)
        if (m.multi_index.size() && (m.multi_index[0] % 2 == 1)) CHECK(std::abs(m.value) <= 1e-10);
    }
  }
  // 2 * (9/16) * (8/15)
  const auto r = validate_kernel(KernelSpec::epanechnikov(1));
  CHECK(r.integral_sq == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("odd moments vanish up to degree 5") {
  QuadratureSettings q;
  q.moment_order = 5;
  for (const auto& k : {KernelSpec::gaussian(2), KernelSpec::epanechnikov(2),
                        build_orthogonal_kernel(2, 3)}) {
    const auto r = validate_kernel(k, q);
    for (const auto& m : r.moments) {
      bool odd = false;
      for (int e : m.multi_index) odd = odd || (e % 2 == 1);
      if (odd) CHECK(std::abs(m.value) <= 1e-10);
    }
  }
}

TEST_CASE("shifted kernel fails the symmetry check") {
  const auto shifted = KernelSpec::custom(1, 1, 2.0, 0.75, [](std::span<const double> x) {
    const double t = x[0] - 1.0;
    return std::abs(t) <= 1.0 ? 0.75 * (1.0 - t * t) : 0.0;
  });
  const auto r = validate_kernel(shifted);
  CHECK_FALSE(r.symmetry_ok);
  CHECK_FALSE(r.passed());
}

TEST_CASE("non-finite kernel values are reported") {
  const auto bad = KernelSpec::custom(1, 1, 1.0, 1.0, [](std::span<const double> x) {
    return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.5;
  });
  const auto r = validate_kernel(bad);
  REQUIRE(r.failure.has_value());
  CHECK_FALSE(r.passed());
}

TEST_CASE("orthogonal kernel of order 1 is epanechnikov") {
  const auto k = build_orthogonal_kernel(1, 1);
  const auto ep = KernelSpec::epanechnikov(1);
  for (double x = -1.2; x <= 1.2; x += 0.05) CHECK(eval1(k, x) == doctest::Approx(eval1(ep, x)));
  QuadratureSettings q;
  q.moment_order = 1;
  const auto r = validate_kernel(k, q);
  CHECK(r.passed());
}

TEST_CASE("orthogonal kernel of order 3 matches a hand-solved polynomial") {
  // K(t) = (1 - t^2)(a + b t^2); int K = 1 and int t^2 K = 0 give
  // a 4/3 + b 4/15 = 1, a 4/15 + b 4/35 = 0.
  const double det = (4.0 / 3.0) * (4.0 / 35.0) - (4.0 / 15.0) * (4.0 / 15.0);
  const double a = (4.0 / 35.0) / det;
  const double b = -(4.0 / 15.0) / det;
  const auto k = build_orthogonal_kernel(1, 3);
  for (double t = -1.0; t <= 1.0; t += 0.01)
    CHECK(eval1(k, t) == doctest::Approx((1.0 - t * t) * (a + b * t * t)).epsilon(1e-12));
  CHECK(eval1(k, 0.9) < 0.0);

  QuadratureSettings q;
  q.moment_order = 3;
  const auto r = validate_kernel(k, q);
  CHECK(r.passed());
  for (const auto& m : r.moments)
    if (m.multi_index == std::vector<int>{2}) CHECK(std::abs(m.value) <= 1e-8);
}

TEST_CASE("orthogonal product kernel in two dimensions") {
  const auto r = validate_kernel(build_orthogonal_kernel(2, 1));
  CHECK(std::abs(r.integral - 1.0) <= 1e-8);
  CHECK(r.passed());
  QuadratureSettings q;
  q.moment_order = 3;
  CHECK(validate_kernel(build_orthogonal_kernel(2, 3), q).passed());
  CHECK(validate_kernel(build_orthogonal_kernel(1, 5), QuadratureSettings{.moment_order = 5}).passed());
}

TEST_CASE("multi-index enumeration") {
  CHECK(multi_indices(1, 3).size() == 3);
  CHECK(multi_indices(2, 2).size() == 5);
  CHECK(multi_indices(3, 1).size() == 3);
}

TEST_CASE("kernel family names round-trip") {
  for (auto f : {KernelFamily::gaussian, KernelFamily::epanechnikov, KernelFamily::orthogonal})
    CHECK(kernel_family_from_string(to_string(f)) == f);
  CHECK_THROWS(kernel_family_from_string("box"));
}
