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
#include <random>
#include <vector>

#include "wwkde/error.hpp"
#include "wwkde/theory.hpp"

using namespace wwkde;

namespace {

// Dense grid maximum of lambda u - phi(lambda) over [0, lambda_max].
double grid_conjugate(double m, double q, double u, double lambda_max, int nodes) {
  double best = 0.0;
  for (int i = 0; i <= nodes; ++i) {
    const double l = lambda_max * i / nodes;
    best = std::max(best, l * u - phi_piecewise(m, q, l));
  }
  return best;
}

}  // namespace

TEST_CASE("exponents") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> beta(0.05, 10.0);
  for (int i = 0; i < 100; ++i) {
    const TailModel tm(beta(gen), 1 + static_cast<int>(gen() % 6));
    const double q = tm.exponent_q(), qs = tm.exponent_qstar();
    CHECK(qs > 1.0);
    CHECK(qs < 2.0);
    CHECK(qs == doctest::Approx(q / (q - 1.0)).epsilon(1e-13));
    CHECK(tm.regime_m(1000) == doctest::Approx(std::pow(1000.0, tm.beta() / (2 * tm.beta() + tm.dim()))));
  }
  CHECK_THROWS_AS(TailModel(0.0, 1), ContractError);
  CHECK_THROWS_AS(TailModel(1.0, 1, TailConstants{.c4 = -1.0}), ContractError);
}

TEST_CASE("phi examples") {
  const TailModel tm(1.0, 1);
  REQUIRE(tm.regime_m(8) == doctest::Approx(2.0));
  CHECK(phi(tm, 8, 1.0) == doctest::Approx(1.0));
  CHECK(phi(tm, 8, 3.0) == doctest::Approx(27.0));
  CHECK(phi(tm, 8, -3.0) == doctest::Approx(27.0));
  CHECK(phi(tm, 8, 0.0) == 0.0);
}

TEST_CASE("fenchel conjugate of the square") {
  const auto sq = [](double l) { return l * l; };
  CHECK(fenchel_conjugate(sq, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fenchel_conjugate(sq, 0.0) == doctest::Approx(0.0));
  CHECK(fenchel_conjugate(sq, 7.0) == doctest::Approx(12.25).epsilon(1e-12));
}

TEST_CASE("fenchel conjugate widens then gives up") {
  const auto sq = [](double l) { return l * l; };
  SearchSettings narrow;
  narrow.lambda_max = 0.01;
  CHECK(fenchel_conjugate(sq, 2.0, narrow) == doctest::Approx(1.0).epsilon(1e-12));
  const auto linear = [](double l) { return 0.5 * l; };
  CHECK_THROWS_AS(fenchel_conjugate(linear, 1.0), NumericalError);
}

TEST_CASE("phi conjugate against a dense grid") {
  const double m = 2.0, q = 3.0;
  for (double u : {0.5, 3.0, 4.0, 10.0, 30.0}) {
    const double oracle = grid_conjugate(m, q, u, 1.0 + u, 1000000);
    CHECK(phi_conjugate_piecewise(m, q, u) == doctest::Approx(oracle).epsilon(1e-6));
    const double numeric = fenchel_conjugate([&](double l) { return phi_piecewise(m, q, l); }, u);
    CHECK(numeric == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("closed-form and numeric conjugates agree") {
  for (double beta : {1.0, 2.0, 3.0})
    for (int d : {1, 2, 3}) {
      const TailModel tm(beta, d);
      for (std::uint64_t n : {8u, 1000u}) {
        const double m = tm.regime_m(n);
        for (double lu = -2.0; lu <= 2.0; lu += 0.1) {
          const double u = std::pow(10.0, lu);
          const double numeric = fenchel_conjugate([&](double l) { return phi(tm, n, l); }, u);
          const double closed = phi_conjugate(tm, n, u);
          CHECK(std::abs(numeric - closed) <= 1e-6 * std::max(closed, 1e-300));
          (void)m;
        }
      }
    }
}

TEST_CASE("tail upper bound") {
  const TailModel tm(1.0, 1);
  CHECK(tail_upper(tm, 1.0).probability == doctest::Approx(2.0 * std::exp(-1.0)));
  CHECK(tail_upper(tm, 1.0).probability == doctest::Approx(0.73576).epsilon(1e-5));
  CHECK_FALSE(tail_upper(tm, 1.0).outside_stated_range);
  CHECK(tail_upper(tm, 0.5).outside_stated_range);
  const double inv = std::pow(std::log(2.0), 1.0 / tm.exponent_qstar());
  CHECK(tail_upper(tm, inv).probability == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tail_upper(tm, 0.1).probability == 1.0);
  const TailModel tm2(2.0, 1);
  CHECK(tail_upper(tm2, 8.0).probability == doctest::Approx(2.0 * std::exp(-32.0)).epsilon(1e-12));
}

TEST_CASE("two-regime bound") {
  const TailModel tm(1.0, 1);
  CHECK(tail_two_regime(tm, 8, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(tail_two_regime(tm, 8, 0.0) == 1.0);
  // Continuous at the junction.
  const double m = tm.regime_m(8);
  CHECK(tail_two_regime(tm, 8, m * (1 - 1e-12)) == doctest::Approx(tail_two_regime(tm, 8, m)));
}

TEST_CASE("two-regime bound is largest at n = 1") {
  for (double beta : {0.5, 1.0, 2.0})
    for (int d : {1, 3}) {
      const TailModel tm(beta, d);
      for (double u : {1.0, 1.5, 3.0, 10.0, 40.0}) {
        const double at_one = tail_two_regime(tm, 1, u);
        for (std::uint64_t n = 1; n <= 1000000; n = n * 3 + 1)
          CHECK(tail_two_regime(tm, n, u) <= at_one);
      }
    }
}

TEST_CASE("two-regime local slope") {
  // A small constant keeps the far branch above the underflow limit.
  for (double beta : {1.0, 2.0}) {
    const TailModel tm(beta, 1, TailConstants{.c_two_regime = 1e-4});
    const std::uint64_t n = 1000;
    const double m = tm.regime_m(n);
    auto log_minus_log = [&](double u) { return std::log(-std::log(tail_two_regime(tm, n, u))); };
    const double a = 0.2 * m, b = 0.8 * m;
    CHECK((log_minus_log(b) - log_minus_log(a)) / std::log(b / a) == doctest::Approx(2.0));
    const double u = 1e4;
    const double slope = (log_minus_log(1.01 * u) - log_minus_log(u)) / std::log(1.01);
    CHECK(std::abs(slope - tm.exponent_qstar()) <= 1e-3);
  }
}

TEST_CASE("tail lower bound") {
  CHECK(tail_lower(TailModel(2.0, 1), 1.0).probability == doctest::Approx(2.0 * std::exp(-1.0)));
  std::mt19937_64 gen(3);
  for (int i = 0; i < 100; ++i) {
    const TailModel tm(0.1 + (gen() % 1000) / 100.0, 1 + static_cast<int>(gen() % 4));
    const double u1 = 2.0, u2 = 5.0;
    auto slope = [&](auto bound) {
      return (std::log(-std::log(bound(tm, u2).probability / 2.0)) -
              std::log(-std::log(bound(tm, u1).probability / 2.0))) / std::log(u2 / u1);
    };
    CHECK(slope(tail_lower) == doctest::Approx(slope(tail_upper)));
  }
  const TailModel inconsistent(1.0, 1, TailConstants{.c4 = 2.0, .c14 = 1.0});
  CHECK_FALSE(inconsistent.lower_constant_consistent());
  CHECK(TailModel(1.0, 1, TailConstants{.c4 = 1.0, .c14 = 2.0}).lower_constant_consistent());
}

TEST_CASE("confidence radius") {
  const TailModel tm(1.0, 1);
  const auto r = confidence_radius(tm, 8, 2.0 * std::exp(-8.0));
  CHECK(r.u_star == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(r.radius == doctest::Approx(2.0).epsilon(1e-14));
  for (std::uint64_t n : {1u, 50u, 9999u}) {
    const auto one = confidence_radius(tm, n, 2.0 * std::exp(-1.0));
    CHECK(one.radius == doctest::Approx(1.0 / std::cbrt(static_cast<double>(n))));
  }
  double prev = 0.0;
  for (double alpha = 0.5; alpha > 1e-12; alpha /= 2.0) {
    const double radius = confidence_radius(tm, 100, alpha).radius;
    CHECK(radius > prev);
    prev = radius;
  }
  const auto band = confidence_radius(tm, 8, 2.0 * std::exp(-8.0), 0.5);
  CHECK(band.half_width == doctest::Approx(2.25));
  CHECK_THROWS_AS(confidence_radius(tm, 8, 1.0), ContractError);
  CHECK_THROWS_AS(confidence_radius(tm, 8, 0.0), ContractError);
}

TEST_CASE("L_p tail bound") {
  const TailModel tm(1.0, 1);
  CHECK(lp_tail_upper(tm, 1.0, 0.0).probability == doctest::Approx(std::exp(-1.0)));
  CHECK(lp_tail_upper(tm, 0.7, 0.7).probability == 1.0);
  const auto vacuous = lp_tail_upper(tm, 0.2, 0.7);
  CHECK(vacuous.probability == 1.0);
  CHECK(vacuous.outside_stated_range);
}

TEST_CASE("convergence terms") {
  const TailModel tm(1.0, 1);
  CHECK(as_convergence_terms(tm, 1.0, 1).terms[0] == doctest::Approx(std::exp(-1.0)));
  for (double v : {2.0, 3.0, 7.5}) {
    const double big = as_convergence_terms(tm, v, 10000).partial_sum;
    const double small = as_convergence_terms(tm, v, 1000).partial_sum;
    CHECK(big - small <= 1e-6);
    CHECK(big >= small);
  }
  // The series stays below a constant times v^(-q) on [1, 10].
  for (double beta : {1.0, 2.0})
    for (int d : {1, 2}) {
      const TailModel model(beta, d);
      double hi = 0.0;
      for (double v = 1.0; v <= 10.0; v += 0.25) {
        const auto t = as_convergence_terms(model, v, 10000);
        hi = std::max(hi, t.partial_sum * std::pow(v, model.exponent_q()));
        CHECK(t.series_bound == doctest::Approx(std::pow(v, -model.exponent_q())));
      }
      CHECK(hi < 10.0);
    }
  CHECK_THROWS_AS(as_convergence_terms(tm, 0.5, 10), ContractError);
}
