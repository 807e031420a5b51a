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

#ifndef CURVGRF_MATOPS_HPP_
#define CURVGRF_MATOPS_HPP_

#include <stdexcept>

#include <Eigen/Dense>

// Dense constructions of the vec/vech/diag operators and the commutation and
// duplication matrices, together with the analytic Moore-Penrose inverse of
// the duplication matrix.
//
// Index conventions: the textbook formulas are 1-based; storage here is
// 0-based.  For 1 <= j <= i <= n the half-vectorization index is
//   k = (j-1)*n - j*(j-1)/2 + i,
// and full vectorization is column-major, k = (j-1)*n + i.  All 0-based
// helpers below are these formulas shifted by one.

namespace curvgrf {

// 0-based position of entry (i, j) in vec(T) for an n x n matrix.
inline Eigen::Index vec_index(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  return j * n + i;
}

// 0-based position of entry (i, j), i >= j, in vech(T).
inline Eigen::Index vech_index(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  if (j > i) std::swap(i, j);
  return j * n - j * (j + 1) / 2 + i;
}

inline Eigen::Index vech_size(Eigen::Index n) { return n * (n + 1) / 2; }

inline Eigen::VectorXd vec_of(const Eigen::MatrixXd& t) {
  if (t.rows() != t.cols()) throw std::invalid_argument("vec_of: matrix must be square");
  return Eigen::Map<const Eigen::VectorXd>(t.data(), t.size());
}

// Lower-triangle column read (entries above the main diagonal are dropped).
inline Eigen::VectorXd vech_of(const Eigen::MatrixXd& t) {
  if (t.rows() != t.cols()) throw std::invalid_argument("vech_of: matrix must be square");
  const Eigen::Index n = t.rows();
  Eigen::VectorXd v(vech_size(n));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) v[vech_index(n, i, j)] = t(i, j);
  return v;
}

// Inverse of vech_of onto symmetric matrices.
inline Eigen::MatrixXd sym_from_vech(const Eigen::VectorXd& v) {
  const auto m = v.size();
  const auto n = static_cast<Eigen::Index>((std::sqrt(8.0 * static_cast<double>(m) + 1.0) - 1.0) / 2.0 + 0.5);
  if (vech_size(n) != m) throw std::invalid_argument("sym_from_vech: length is not n(n+1)/2");
  Eigen::MatrixXd t(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) t(i, j) = t(j, i) = v[vech_index(n, i, j)];
  return t;
}

inline Eigen::VectorXd diag_of(const Eigen::MatrixXd& t) {
  if (t.rows() != t.cols()) throw std::invalid_argument("diag_of: matrix must be square");
  return t.diagonal();
}

inline Eigen::MatrixXd diag_inv(const Eigen::VectorXd& v) {
  return v.asDiagonal();
}

// Permutation C_n with C_n * vec(T) = vec(T^T); an involution.
inline Eigen::MatrixXd commutation_matrix(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("commutation_matrix: n must be >= 1");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) c(vec_index(n, i, j), vec_index(n, j, i)) = 1.0;
  return c;
}

// D_n with D_n * vech(S) = vec(S) for symmetric S.
inline Eigen::MatrixXd duplication_matrix(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("duplication_matrix: n must be >= 1");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n * n, vech_size(n));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) d(vec_index(n, i, j), vech_index(n, i, j)) = 1.0;
  return d;
}

// Moore-Penrose inverse of D_n, built analytically: the row for a strictly
// lower entry (i, j) averages the two duplicated positions (i, j) and (j, i)
// of vec, the row for a diagonal entry picks it up with weight one.
inline Eigen::MatrixXd dup_pinv(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("dup_pinv: n must be >= 1");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(vech_size(n), n * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    p(vech_index(n, j, j), vec_index(n, j, j)) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      p(vech_index(n, i, j), vec_index(n, i, j)) = 0.5;
      p(vech_index(n, i, j), vec_index(n, j, i)) = 0.5;
    }
  }
  return p;
}

}  // namespace curvgrf

#endif  // CURVGRF_MATOPS_HPP_
