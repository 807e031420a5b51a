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

#ifndef CURVGRF_CURVATURE_HPP_
#define CURVGRF_CURVATURE_HPP_

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "curvgrf/ensemble.hpp"

namespace curvgrf {

// The isosurface through a point is undefined where the gradient vanishes.
class DegenerateGradient : public std::runtime_error {
 public:
  explicit DegenerateGradient(const std::string& what) : std::runtime_error(what) {}
};

// Principal curvatures of the level set through a point, as eigenvalues of
// -N^T H N / |g| where the columns of N are an orthonormal basis of the
// orthogonal complement of g.  Sign convention: the leading minus means a
// sphere |x|^2 = R^2 with outward gradient has curvatures -1/R.

struct CurvatureSample {
  Eigen::VectorXd kappas;  // ascending, length n-1
};

// Orthonormal basis of the null space of g^T, built from the Householder
// reflection that exchanges g/|g| with a signed first canonical vector.  The
// construction is deterministic in g.
inline Eigen::MatrixXd nullspace_basis(const Eigen::VectorXd& g, double scale = 1.0) {
  const Eigen::Index n = g.size();
  if (n < 2) throw std::invalid_argument("nullspace_basis: need dimension >= 2");
  const double norm = g.norm();
  if (!(norm > 1e-12 * scale))
    throw DegenerateGradient("nullspace_basis: gradient norm below degeneracy threshold");
  Eigen::VectorXd v = g / norm;
  const double sign = v[0] >= 0.0 ? 1.0 : -1.0;
  v[0] += sign;
  const double vtv = v.squaredNorm();  // 2(1 + |q_1|) >= 2, never degenerate
  Eigen::MatrixXd basis(n, n - 1);
  for (Eigen::Index j = 1; j < n; ++j) {
    basis.col(j - 1) = -2.0 * (v[j] / vtv) * v;
    basis(j, j - 1) += 1.0;
  }
  return basis;
}

inline CurvatureSample principal_curvatures(const PointJet& jet, double gradient_scale = 1.0) {
  const Eigen::MatrixXd basis = nullspace_basis(jet.gradient, gradient_scale);
  const double norm = jet.gradient.norm();
  Eigen::MatrixXd shape = -(basis.transpose() * jet.hessian * basis) / norm;
  const double asym = (shape - shape.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-13 * std::max(1.0, shape.cwiseAbs().maxCoeff()))
    throw std::runtime_error("principal_curvatures: unexpected asymmetry in reduced Hessian");
  shape = 0.5 * (shape + shape.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(shape, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("principal_curvatures: eigensolver failed");
  return CurvatureSample{solver.eigenvalues()};
}

}  // namespace curvgrf

#endif  // CURVGRF_CURVATURE_HPP_
