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

#include "curvgrf/density.hpp"
#include "curvgrf/quadrature.hpp"
#include "curvgrf/rng.hpp"

using namespace curvgrf;

namespace {

constexpr double kPi = 3.141592653589793;

// sigma^2 rho4_0 = 1 and unit gradient variance.
const DerivedConstants kUnitScale{-1.0, 1.0, 1.0};

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

double log_vandermonde(const Eigen::VectorXd& x) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i + 1; j < x.size(); ++j) acc += std::log(std::abs(x[j] - x[i]));
  return acc;
}

}  // namespace

TEST_CASE("one-dimensional eigenvalue density is normal with variance 3c", "[density]") {
  const DensitySpec spec(1, kUnitScale);
  CHECK(eig_pdf(spec, vec1(0.0)) == Catch::Approx(1.0 / std::sqrt(6.0 * kPi)).epsilon(1e-14));
  for (double x = -5.0; x <= 5.0; x += 0.5) {
    const double normal = std::exp(-x * x / 6.0) / std::sqrt(6.0 * kPi);
    CHECK(eig_pdf(spec, vec1(x)) == Catch::Approx(normal).epsilon(1e-13));
  }
}

TEST_CASE("eigenvalue density is exchange symmetric", "[density]") {
  const DensitySpec spec(2, kUnitScale);
  CHECK(eig_pdf(spec, vec2(0.4, -1.3)) == eig_pdf(spec, vec2(-1.3, 0.4)));
  CHECK(eig_pdf(spec, vec2(1.0, 1.0)) == 0.0);  // coinciding eigenvalues
}

TEST_CASE("two-dimensional eigenvalue density integrates to one", "[density]") {
  const DensitySpec spec(2, constants(CorrelationModel::gaussian(1.0)));
  const auto inner = [&](double x) {
    return integrate_real_line_tan([&](double y) { return eig_pdf(spec, vec2(x, y)); }, 1e-9);
  };
  const double mass = integrate_real_line_tan(inner, 1e-8);
  CHECK(mass == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("eigenvalue density exponent matches the covariance quadratic form", "[density]") {
  NormalStream stream(29, 0);
  for (Eigen::Index m : {Eigen::Index{2}, Eigen::Index{3}}) {
    const DensitySpec spec(m, kUnitScale);
    const CovarianceBundle bundle = build_bundle(m, kUnitScale);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd lambda(m), mu(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        lambda[i] = 2.0 * stream.next_normal();
        mu[i] = 2.0 * stream.next_normal();
      }
      const double q_lambda =
          quadratic_form_reduction(bundle, Eigen::MatrixXd::Identity(m, m), lambda).second;
      const double q_mu =
          quadratic_form_reduction(bundle, Eigen::MatrixXd::Identity(m, m), mu).second;
      const double expected = log_vandermonde(lambda) - log_vandermonde(mu) -
                              0.5 * (q_lambda - q_mu);
      const double observed = std::log(eig_pdf(spec, lambda)) - std::log(eig_pdf(spec, mu));
      CHECK(observed == Catch::Approx(expected).margin(1e-10));
    }
  }
}

TEST_CASE("gradient norm density", "[density]") {
  const DensitySpec half_normal(1, kUnitScale);
  CHECK(gradnorm_pdf(half_normal, 0.0) == Catch::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(gradnorm_pdf(half_normal, -0.5), std::invalid_argument);

  for (Eigen::Index n = 1; n <= 5; ++n) {
    const DensitySpec spec(n, kUnitScale);
    const double mass = integrate([&](double u) { return gradnorm_pdf(spec, u); }, 0.0,
                                  std::numeric_limits<double>::infinity(), 1e-12);
    CHECK(mass == Catch::Approx(1.0).margin(1e-9));
  }

  // Second moment n g, checked for a non-unit gradient variance.
  const DerivedConstants consts = constants(CorrelationModel::gaussian(0.8, 2.0));
  for (Eigen::Index n : {Eigen::Index{2}, Eigen::Index{3}}) {
    const DensitySpec spec(n, consts);
    const double second = integrate([&](double u) { return u * u * gradnorm_pdf(spec, u); }, 0.0,
                                    std::numeric_limits<double>::infinity(), 1e-12);
    CHECK(second == Catch::Approx(n * consts.grad_var()).margin(1e-8));
  }
}

TEST_CASE("planar curvature density collapses to the closed form", "[density]") {
  // alpha = 1/6 via an explicit constants bundle; at that alpha the closed
  // form takes the value 1/6 at the origin.
  const DensitySpec spec(2, DerivedConstants(-1.0, 3.0, 1.0));
  CHECK(spec.consts.alpha == Catch::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(curvature_pdf(spec, vec1(0.0)) == Catch::Approx(1.0 / 6.0).epsilon(1e-14));
  for (double k = -10.0; k <= 10.0; k += 0.25) {
    const double reduced = std::sqrt(spec.consts.alpha / 6.0) *
                           std::pow(1.0 + (2.0 * spec.consts.alpha / 3.0) * k * k, -1.5);
    CHECK(curvature_pdf(spec, vec1(k)) == Catch::Approx(reduced).epsilon(1e-13));
  }
}

TEST_CASE("curvature density normalization", "[density]") {
  const DensitySpec planar(2, constants(CorrelationModel::gaussian(1.0)));
  const double mass_1d = integrate_real_line_tan(
      [&](double k) { return curvature_pdf(planar, vec1(k)); }, 1e-10);
  CHECK(mass_1d == Catch::Approx(1.0).margin(1e-8));

  const DensitySpec spatial(3, constants(CorrelationModel::gaussian(1.0)));
  CHECK(curvature_pdf(spatial, vec2(0.3, -0.4)) ==
        curvature_pdf(spatial, vec2(-0.4, 0.3)));  // exchange symmetry
  const auto inner = [&](double x) {
    return integrate_real_line_tan(
        [&](double y) { return curvature_pdf(spatial, vec2(x, y)); }, 1e-9);
  };
  const double mass_2d = integrate_real_line_tan(inner, 1e-8);
  CHECK(mass_2d == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("curvature density is nonnegative and vanishes on coinciding components", "[density]") {
  const DensitySpec spec(3, constants(CorrelationModel::gaussian(1.0)));
  NormalStream stream(41, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = 3.0 * stream.next_normal();
    const double y = 3.0 * stream.next_normal();
    CHECK(curvature_pdf(spec, vec2(x, y)) >= 0.0);
  }
  CHECK(curvature_pdf(spec, vec2(0.7, 0.7)) == 0.0);
}

TEST_CASE("ratio integral agrees with the closed-form curvature density", "[density]") {
  const DensitySpec reference(2, DerivedConstants(-1.0, 3.0, 1.0));  // alpha = 1/6
  CHECK(ratio_integral_pdf(reference, vec1(0.0)) == Catch::Approx(1.0 / 6.0).margin(1e-7));

  const DensitySpec planar(2, constants(CorrelationModel::gaussian(1.0)));

  const DensitySpec spatial(3, constants(CorrelationModel::gaussian(1.0)));
  CHECK(ratio_integral_pdf(spatial, vec2(0.3, -0.2)) ==
        Catch::Approx(curvature_pdf(spatial, vec2(0.3, -0.2))).margin(1e-6));

  // Tail agreement, relative.
  const double tail_closed = curvature_pdf(planar, vec1(5.0));
  const double tail_numeric = ratio_integral_pdf(planar, vec1(5.0));
  CHECK(std::abs(tail_closed - tail_numeric) <= 1e-4 * tail_closed);
}

TEST_CASE("planar curvature CDF", "[density]") {
  const DensitySpec spec(2, constants(CorrelationModel::gaussian(1.0)));
  CHECK(curvature_cdf_1d(spec, 0.0) == 0.5);
  CHECK(curvature_cdf_1d(spec, 1e5) == Catch::Approx(1.0).margin(1e-9));
  CHECK(curvature_cdf_1d(spec, -1e5) == Catch::Approx(0.0).margin(1e-9));

  const double mass = integrate([&](double k) { return curvature_pdf(spec, vec1(k)); }, -1.0, 1.0,
                                1e-13);
  CHECK(curvature_cdf_1d(spec, 1.0) - curvature_cdf_1d(spec, -1.0) ==
        Catch::Approx(mass).margin(1e-10));

  double previous = curvature_cdf_1d(spec, -20.0);
  for (double k = -19.5; k <= 20.0; k += 0.5) {
    const double current = curvature_cdf_1d(spec, k);
    CHECK(current >= previous);
    previous = current;
  }

  const DensitySpec spatial(3, constants(CorrelationModel::gaussian(1.0)));
  CHECK_THROWS_AS(curvature_cdf_1d(spatial, 0.0), std::invalid_argument);
}

TEST_CASE("curvature density depends on the model only through alpha", "[density]") {
  for (Eigen::Index n : {Eigen::Index{2}, Eigen::Index{3}}) {
    const DensitySpec low(n, constants(CorrelationModel::gaussian(1.4, 0.1)));
    const DensitySpec mid(n, constants(CorrelationModel::gaussian(1.4, 1.0)));
    const DensitySpec high(n, constants(CorrelationModel::gaussian(1.4, 10.0)));
    NormalStream stream(43, n);
    for (int trial = 0; trial < 30; ++trial) {
      Eigen::VectorXd kappa(n - 1);
      for (Eigen::Index i = 0; i < n - 1; ++i) kappa[i] = 2.0 * stream.next_normal();
      const double reference = curvature_pdf(mid, kappa);
      CHECK(std::abs(curvature_pdf(low, kappa) - reference) <= 1e-12 * reference);
      CHECK(std::abs(curvature_pdf(high, kappa) - reference) <= 1e-12 * reference);
    }
  }
}

TEST_CASE("curvatures scale as inverse length", "[density]") {
  const double c = 2.5;
  for (Eigen::Index n : {Eigen::Index{2}, Eigen::Index{3}}) {
    const DensitySpec base(n, constants(CorrelationModel::gaussian(1.0)));
    const DensitySpec stretched(n, constants(CorrelationModel::gaussian(c)));
    NormalStream stream(47, n);
    for (int trial = 0; trial < 30; ++trial) {
      Eigen::VectorXd kappa(n - 1);
      for (Eigen::Index i = 0; i < n - 1; ++i) kappa[i] = stream.next_normal();
      const double lhs = curvature_pdf(stretched, kappa) * std::pow(c, -(n - 1.0));
      const double rhs = curvature_pdf(base, c * kappa);
      CHECK(lhs == Catch::Approx(rhs).epsilon(1e-11));
    }
  }
}

TEST_CASE("density argument validation", "[density]") {
  const DensitySpec spec(2, kUnitScale);
  CHECK_THROWS_AS(eig_pdf(spec, Eigen::VectorXd()), std::invalid_argument);
  CHECK_THROWS_AS(curvature_pdf(spec, vec2(0.0, 1.0)), std::invalid_argument);
  const DensitySpec one(1, kUnitScale);
  CHECK_THROWS_AS(curvature_pdf(one, vec1(0.0)), std::invalid_argument);
  Eigen::VectorXd bad(1);
  bad << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eig_pdf(spec, bad), std::invalid_argument);
  CHECK_THROWS_AS(DensitySpec(0, kUnitScale), std::invalid_argument);
}
