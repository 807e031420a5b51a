// Copyright 2026 The curvgrf Authors
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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "curvgrf/corrmodel.hpp"
#include "curvgrf/rng.hpp"

using namespace curvgrf;

TEST_CASE("rho values", "[corrmodel]") {
  const auto gaussian = CorrelationModel::gaussian(1.0);
  CHECK(rho(gaussian, 0.0) == 1.0);
  CHECK(rho(gaussian, 1.0) == Catch::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(rho(gaussian, -0.1), std::invalid_argument);

  // Large-shape rational quadratic approaches the gaussian family.
  const auto rq = CorrelationModel::rational_quadratic(1.0, 1e4);
  for (double s = 0.0; s <= 3.0; s += 0.1)
    CHECK(std::abs(rho(rq, s) - rho(gaussian, s)) < 1e-3);
}

TEST_CASE("analytic r derivatives at zero", "[corrmodel]") {
  const auto gaussian = CorrelationModel::gaussian(1.0);
  CHECK(r_deriv(gaussian, 0, 0.0) == 1.0);
  CHECK(r_deriv(gaussian, 1, 0.0) == Catch::Approx(-0.5).epsilon(1e-15));
  CHECK(r_deriv(gaussian, 2, 0.0) == Catch::Approx(0.25).epsilon(1e-15));

  const auto rq = CorrelationModel::rational_quadratic(1.0, 1.0);
  CHECK(r_deriv(rq, 1, 0.0) == Catch::Approx(-0.5).epsilon(1e-15));
  CHECK(r_deriv(rq, 2, 0.0) == Catch::Approx(0.5).epsilon(1e-15));  // (a+1)/(4a) at a=1

  CHECK_THROWS_AS(r_deriv(gaussian, 5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(r_deriv(gaussian, 1, -1.0), std::invalid_argument);
}

TEST_CASE("radial finite-difference operator matches analytic derivatives", "[corrmodel]") {
  const auto gaussian = CorrelationModel::gaussian(1.0);
  CHECK(std::abs(radial_operator_check(gaussian, 1, 0.5) - r_deriv(gaussian, 1, 0.25)) < 1e-6);
  CHECK(std::abs(radial_operator_check(gaussian, 2, 1.0) - r_deriv(gaussian, 2, 1.0)) < 1e-5);

  // 20 pseudo-random radii per model, both orders.
  NormalStream stream(3, 0);
  for (const auto& model : {CorrelationModel::gaussian(0.7, 2.0),
                            CorrelationModel::rational_quadratic(1.3, 2.5, 0.5)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const double u = 0.1 + 1.9 * stream.next_uniform();
      for (int order : {1, 2}) {
        const double numeric = radial_operator_check(model, order, u);
        const double analytic = r_deriv(model, order, u * u) / model.variance;
        CHECK(std::abs(numeric - analytic) < 1e-5 * std::max(1.0, std::abs(analytic)));
      }
    }
  }
}

TEST_CASE("raw radial operator converges at second order", "[corrmodel]") {
  const auto model = CorrelationModel::gaussian(1.0);
  const double u = 0.8;
  const double exact = 2.0 * r_deriv(model, 1, u * u);  // operator value before the 2^i bridge
  const double coarse = std::abs(detail::radial_operator_raw(model, 1, u, 2e-2) - exact);
  const double fine = std::abs(detail::radial_operator_raw(model, 1, u, 1e-2) - exact);
  const double ratio = coarse / fine;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("derived constants", "[corrmodel]") {
  // rho4_0 is the Hessian covariance coefficient 4 r''(0)/sigma^2, smaller by
  // a factor 3 than the literal fourth derivative of rho; see corrmodel.hpp.
  const DerivedConstants unit = constants(CorrelationModel::gaussian(1.0));
  CHECK(unit.rho2_0 == Catch::Approx(-1.0).epsilon(1e-15));
  CHECK(unit.rho4_0 == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(unit.alpha == Catch::Approx(0.5).epsilon(1e-15));  // l^2 / 2

  const DerivedConstants wide = constants(CorrelationModel::gaussian(2.0, 5.0));
  CHECK(wide.rho2_0 == Catch::Approx(-0.25).epsilon(1e-15));
  CHECK(wide.rho4_0 == Catch::Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(wide.alpha == Catch::Approx(2.0).epsilon(1e-15));

  const DerivedConstants rq = constants(CorrelationModel::rational_quadratic(1.0, 1.0));
  CHECK(rq.rho4_0 == Catch::Approx(2.0).epsilon(1e-14));  // (a+1)/(a l^4)
  CHECK(rq.alpha == Catch::Approx(0.25).epsilon(1e-14));  // a l^2 / (2(a+1))
}

TEST_CASE("alpha is variance-invariant and scales with the squared lengthscale", "[corrmodel]") {
  const double base = constants(CorrelationModel::gaussian(1.3)).alpha;
  for (double variance : {0.1, 1.0, 10.0})
    CHECK(constants(CorrelationModel::gaussian(1.3, variance)).alpha ==
          Catch::Approx(base).epsilon(1e-14));
  for (double c : {0.5, 2.0, 3.0})
    CHECK(constants(CorrelationModel::gaussian(1.3 * c)).alpha ==
          Catch::Approx(base * c * c).epsilon(1e-12));
}

TEST_CASE("degenerate constants are rejected", "[corrmodel]") {
  CHECK_THROWS_AS(DerivedConstants(0.0, 3.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(DerivedConstants(0.5, 3.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(DerivedConstants(-1.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(DerivedConstants(-1.0, -2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(DerivedConstants(-1.0, 3.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(CorrelationModel::gaussian(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(CorrelationModel::rational_quadratic(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(detail::radial_operator_raw(CorrelationModel::gaussian(1.0), 1, 1.0, 0.0),
                  std::domain_error);
}
