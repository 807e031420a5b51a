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

#ifndef CURVGRF_COVARIANCE_HPP_
#define CURVGRF_COVARIANCE_HPP_

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "curvgrf/corrmodel.hpp"
#include "curvgrf/matops.hpp"

namespace curvgrf {

// Exact lag-zero covariance structure of the gradient and Hessian of an
// isotropic four-times-differentiable random field, and the matrices the
// closed-form densities are built from.
//
// With c = sigma^2 rho4_0:
//   grad_cov  = -sigma^2 rho2_0 I_n                    (n x n)
//   cross_cov = 0                                      (n x n^2)
//   hess_cov  = c (I_{n^2} + C_n + vec(I) vec(I)^T)    (n^2 x n^2, rank n(n+1)/2)
//   sigma_n   = D_n^+ hess_cov D_n^{+T}                (vech coordinates, SPD)
//   sigma_tilde = c (2 I_n + 1 1^T)                    (eigenvalue-space covariance)
//   |sigma_n| = 2^(n-1) (2+n) c^(n(n+1)/2)
struct CovarianceBundle {
  Eigen::Index n = 0;
  DerivedConstants consts;
  Eigen::MatrixXd grad_cov;
  Eigen::MatrixXd cross_cov;
  Eigen::MatrixXd hess_cov;
  Eigen::MatrixXd sigma_n;
  Eigen::MatrixXd sigma_tilde;
  double sigma_det = 0.0;
};

inline CovarianceBundle build_bundle(Eigen::Index n, const DerivedConstants& consts) {
  if (n < 1) throw std::invalid_argument("build_bundle: n must be >= 1");
  const double c = consts.hess_scale();
  CovarianceBundle b;
  b.n = n;
  b.consts = consts;
  b.grad_cov = consts.grad_var() * Eigen::MatrixXd::Identity(n, n);
  b.cross_cov = Eigen::MatrixXd::Zero(n, n * n);
  const Eigen::VectorXd vec_id = vec_of(Eigen::MatrixXd::Identity(n, n));
  b.hess_cov = c * (Eigen::MatrixXd::Identity(n * n, n * n) + commutation_matrix(n) +
                    vec_id * vec_id.transpose());
  const Eigen::MatrixXd dp = dup_pinv(n);
  b.sigma_n = dp * b.hess_cov * dp.transpose();
  b.sigma_tilde = c * (2.0 * Eigen::MatrixXd::Identity(n, n) + Eigen::MatrixXd::Ones(n, n));
  b.sigma_det = std::pow(2.0, static_cast<double>(n - 1)) * static_cast<double>(2 + n) *
                std::pow(c, static_cast<double>(n * (n + 1)) / 2.0);
  return b;
}

// Closed-form Moore-Penrose inverse of hess_cov:
//   (1/(4c)) (I + C_n - 2/(2+n) vec(I) vec(I)^T).
inline Eigen::MatrixXd hess_cov_pinv(const CovarianceBundle& b) {
  const Eigen::Index n = b.n;
  const double c = b.consts.hess_scale();
  const Eigen::VectorXd vec_id = vec_of(Eigen::MatrixXd::Identity(n, n));
  return (1.0 / (4.0 * c)) *
         (Eigen::MatrixXd::Identity(n * n, n * n) + commutation_matrix(n) -
          (2.0 / (2.0 + static_cast<double>(n))) * vec_id * vec_id.transpose());
}

// Exact inverse of sigma_n via the closed-form pseudoinverse:
// sigma_n^{-1} = D_n^T hess_cov^+ D_n.
inline Eigen::MatrixXd sigma_n_inverse(const CovarianceBundle& b) {
  const Eigen::MatrixXd d = duplication_matrix(b.n);
  return d.transpose() * hess_cov_pinv(b) * d;
}

// lambda^T sigma_tilde_m^{-1} lambda with the Sherman-Morrison closed form
//   sigma_tilde_m^{-1} = (1/(2c)) (I - 1 1^T / (m+2)),
// i.e. (sum lambda_i^2 - (sum lambda_i)^2/(m+2)) / (2c).
inline double sigma_tilde_inv_quadform(const Eigen::VectorXd& lambda, double hess_scale) {
  const double m = static_cast<double>(lambda.size());
  const double sum = lambda.sum();
  return (lambda.squaredNorm() - sum * sum / (m + 2.0)) / (2.0 * hess_scale);
}

namespace detail {

inline void require_orthogonal(const Eigen::MatrixXd& r, double tol = 1e-12) {
  if (r.rows() != r.cols()) throw std::invalid_argument("matrix must be square and orthogonal");
  const double dev =
      (r.transpose() * r - Eigen::MatrixXd::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff();
  if (dev > tol) throw std::invalid_argument("matrix is not orthogonal within tolerance");
}

}  // namespace detail

// Max entrywise deviation of (R (x) R) hess_cov (R^T (x) R^T) from hess_cov.
// Contract: <= 1e-10 for orthogonal R; non-orthogonal input is rejected.
inline double rotation_invariance_check(const CovarianceBundle& b, const Eigen::MatrixXd& r) {
  detail::require_orthogonal(r);
  const Eigen::MatrixXd rr = Eigen::kroneckerProduct(r, r);
  return (rr * b.hess_cov * rr.transpose() - b.hess_cov).cwiseAbs().maxCoeff();
}

// Both sides of the vech-coordinate quadratic form reduction:
//   lhs = vech(R^T diag(lambda) R)^T sigma_n^{-1} vech(R^T diag(lambda) R)
//   rhs = lambda^T sigma_tilde^{-1} lambda.
// The contract is |lhs - rhs| <= 1e-9 (1 + |rhs|).
inline std::pair<double, double> quadratic_form_reduction(const CovarianceBundle& b,
                                                          const Eigen::MatrixXd& r,
                                                          const Eigen::VectorXd& lambda) {
  detail::require_orthogonal(r);
  if (lambda.size() != b.n) throw std::invalid_argument("quadratic_form_reduction: lambda must have length n");
  const Eigen::MatrixXd conjugated = r.transpose() * diag_inv(lambda) * r;
  const Eigen::VectorXd u = vech_of(conjugated);
  const double lhs = u.dot(sigma_n_inverse(b) * u);
  const double rhs = sigma_tilde_inv_quadform(lambda, b.consts.hess_scale());
  return {lhs, rhs};
}

}  // namespace curvgrf

#endif  // CURVGRF_COVARIANCE_HPP_
