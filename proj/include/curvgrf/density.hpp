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

#ifndef CURVGRF_DENSITY_HPP_
#define CURVGRF_DENSITY_HPP_

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "curvgrf/covariance.hpp"
#include "curvgrf/quadrature.hpp"

namespace curvgrf {

// Closed-form densities of the derivative ensemble: the joint law of the
// Hessian eigenvalues, the chi law of the gradient norm, and the joint law of
// the principal curvatures, plus the numeric ratio-integral oracle tying the
// three together.  Constants are assembled in log space so the formulas stay
// finite for dimensions up to at least 8.

struct DensitySpec {
  Eigen::Index n = 2;
  DerivedConstants consts;

  DensitySpec(Eigen::Index dim, const DerivedConstants& c) : n(dim), consts(c) {
    if (n < 1) throw std::invalid_argument("DensitySpec: n must be >= 1");
  }

  DensitySpec(Eigen::Index dim, const CorrelationModel& model)
      : DensitySpec(dim, constants(model)) {}
};

namespace detail {

inline double log_vandermonde_abs(const Eigen::VectorXd& x) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i + 1; j < x.size(); ++j) acc += std::log(std::abs(x[j] - x[i]));
  return acc;  // -inf when two coordinates coincide
}

inline double sum_lgamma_half_ladder(int count) {
  double acc = 0.0;  // sum_{i=1..count} lgamma(1 + i/2)
  for (int i = 1; i <= count; ++i) acc += std::lgamma(1.0 + 0.5 * i);
  return acc;
}

}  // namespace detail

// Joint density of the ordered-free eigenvalues of the projected Hessian in
// dimension m = lambda.size():
//   2^((2-7m-m^2)/4) / (sqrt(2+m) c^(m(m+1)/4) prod_i Gamma(1+i/2))
//     * prod_{i<j} |lambda_j - lambda_i| * exp(-lambda^T sigma_tilde^-1 lambda / 2).
inline double eig_pdf(const DensitySpec& spec, const Eigen::VectorXd& lambda) {
  const int m = static_cast<int>(lambda.size());
  if (m < 1) throw std::invalid_argument("eig_pdf: need at least one eigenvalue");
  if (!lambda.allFinite()) throw std::invalid_argument("eig_pdf: eigenvalues must be finite");
  const double c = spec.consts.hess_scale();
  const double log_norm = 0.25 * (2.0 - 7.0 * m - static_cast<double>(m) * m) * std::log(2.0) -
                          0.5 * std::log(2.0 + m) - 0.25 * m * (m + 1.0) * std::log(c) -
                          detail::sum_lgamma_half_ladder(m);
  const double quad = sigma_tilde_inv_quadform(lambda, c);
  return std::exp(log_norm + detail::log_vandermonde_abs(lambda) - 0.5 * quad);
}

// Chi law of the gradient norm with n degrees of freedom and scale
// sqrt(-sigma^2 rho2_0) per component.
inline double gradnorm_pdf(const DensitySpec& spec, double u) {
  if (u < 0.0) throw std::invalid_argument("gradnorm_pdf: norm value must be nonnegative");
  const int n = static_cast<int>(spec.n);
  const double g = spec.consts.grad_var();
  if (u == 0.0) return n == 1 ? std::sqrt(2.0 / (3.141592653589793 * g)) : 0.0;
  const double log_pdf = std::log(2.0) + (n - 1.0) * std::log(u) - u * u / (2.0 * g) -
                         0.5 * n * std::log(2.0 * g) - std::lgamma(0.5 * n);
  return std::exp(log_pdf);
}

// Joint density of the n-1 principal curvatures:
//   2^((n^2-7n+8)/4) Gamma(n(n+1)/4) / (sqrt(1+n) Gamma(n/2) prod_{i<n} Gamma(1+i/2))
//     * alpha^(n(n-1)/4) prod_{i<j} |kappa_j - kappa_i|
//     / (alpha [sum kappa^2 - (sum kappa)^2/(n+1)] + 1)^((n^2+n)/4).
inline double curvature_pdf(const DensitySpec& spec, const Eigen::VectorXd& kappa) {
  const int n = static_cast<int>(spec.n);
  if (n < 2) throw std::invalid_argument("curvature_pdf: need n >= 2");
  if (kappa.size() != n - 1)
    throw std::invalid_argument("curvature_pdf: kappa must have length n-1");
  if (!kappa.allFinite()) throw std::invalid_argument("curvature_pdf: kappa must be finite");
  const double alpha = spec.consts.alpha;
  const double log_norm = 0.25 * (static_cast<double>(n) * n - 7.0 * n + 8.0) * std::log(2.0) +
                          std::lgamma(0.25 * n * (n + 1.0)) - 0.5 * std::log(1.0 + n) -
                          std::lgamma(0.5 * n) - detail::sum_lgamma_half_ladder(n - 1);
  const double sum = kappa.sum();
  const double spread = kappa.squaredNorm() - sum * sum / (n + 1.0);  // always >= 0
  const double log_pdf = log_norm + 0.25 * n * (n - 1.0) * std::log(alpha) +
                         detail::log_vandermonde_abs(kappa) -
                         0.25 * (static_cast<double>(n) * n + n) * std::log1p(alpha * spread);
  return std::exp(log_pdf);
}

// Numeric oracle for curvature_pdf: integrates out the gradient norm,
//   integral_0^inf u^(n-1) eig_pdf_(m=n-1)(kappa u) gradnorm_pdf(u) du.
inline double ratio_integral_pdf(const DensitySpec& spec, const Eigen::VectorXd& kappa,
                                 double rel_tol = 1e-9) {
  const int n = static_cast<int>(spec.n);
  if (n < 2) throw std::invalid_argument("ratio_integral_pdf: need n >= 2");
  if (kappa.size() != n - 1)
    throw std::invalid_argument("ratio_integral_pdf: kappa must have length n-1");
  const auto integrand = [&](double u) {
    return std::pow(u, n - 1) * eig_pdf(spec, kappa * u) * gradnorm_pdf(spec, u);
  };
  double err = 0.0;
  const double value =
      integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), rel_tol, &err);
  if (value != 0.0 && err > 1e-6 * std::abs(value))
    throw QuadratureError("ratio_integral_pdf did not converge", err);
  return value;
}

// CDF of the single curvature in the planar case n = 2.  Antiderivative of
// the reduced density sqrt(alpha/6) (1 + (2 alpha/3) kappa^2)^(-3/2).
inline double curvature_cdf_1d(const DensitySpec& spec, double kappa) {
  if (spec.n != 2) throw std::invalid_argument("curvature_cdf_1d: defined for n = 2 only");
  const double alpha = spec.consts.alpha;
  const double b = 2.0 * alpha / 3.0;
  return 0.5 + std::sqrt(alpha / 6.0) * kappa / std::sqrt(1.0 + b * kappa * kappa);
}

}  // namespace curvgrf

#endif  // CURVGRF_DENSITY_HPP_
