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

#ifndef CURVGRF_ENSEMBLE_HPP_
#define CURVGRF_ENSEMBLE_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "curvgrf/covariance.hpp"
#include "curvgrf/matops.hpp"
#include "curvgrf/parallel.hpp"
#include "curvgrf/rng.hpp"

namespace curvgrf {

// Sampled derivative pair of a field realization at one point.  The Hessian
// is reconstructed from vech coordinates and is therefore exactly symmetric.
struct PointJet {
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

struct SamplerConfig {
  Eigen::Index n = 2;
  CorrelationModel model;
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
};

// Draws (gradient, Hessian) jets from the exact lag-zero law: the gradient is
// iso-Gaussian with per-component variance -sigma^2 rho2_0, vech(H) is
// Gaussian with covariance sigma_n, and the two are independent.  Sampling in
// vech coordinates through a Cholesky factor of sigma_n sidesteps the
// singular n^2-coordinate covariance.  Each jet is a pure function of
// (seed, index).
class JetSampler {
 public:
  JetSampler(Eigen::Index n, const DerivedConstants& consts, std::uint64_t seed)
      : n_(n), seed_(seed), grad_sd_(std::sqrt(consts.grad_var())) {
    const CovarianceBundle bundle = build_bundle(n, consts);
    Eigen::LLT<Eigen::MatrixXd> llt(bundle.sigma_n);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("JetSampler: sigma_n is not positive definite");
    chol_ = llt.matrixL();
  }

  JetSampler(const SamplerConfig& config)
      : JetSampler(config.n, constants(config.model), config.seed) {}

  Eigen::Index dimension() const { return n_; }

  PointJet operator()(std::uint64_t index) const {
    NormalStream stream(seed_, index);
    PointJet jet;
    jet.gradient.resize(n_);
    for (Eigen::Index i = 0; i < n_; ++i) jet.gradient[i] = grad_sd_ * stream.next_normal();
    Eigen::VectorXd z(vech_size(n_));
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = stream.next_normal();
    jet.hessian = sym_from_vech(chol_ * z);
    return jet;
  }

  // Jets for indices [first, first + count), ordered by index; the thread
  // count changes only the wall clock.
  std::vector<PointJet> sample(std::uint64_t count, std::uint64_t first = 0,
                               unsigned threads = 1) const {
    std::vector<PointJet> jets(count);
    parallel_for(count, threads, [&](std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t i = begin; i < end; ++i) jets[i] = (*this)(first + i);
    });
    return jets;
  }

 private:
  Eigen::Index n_;
  std::uint64_t seed_;
  double grad_sd_;
  Eigen::MatrixXd chol_;
};

inline Eigen::VectorXd hessian_eigenvalues(const PointJet& jet) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jet.hessian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hessian_eigenvalues: eigensolver failed");
  return solver.eigenvalues();  // ascending
}

// Sorted Hessian eigenvalue vectors for indices [0, count).
inline std::vector<Eigen::VectorXd> sample_hessian_eigs(const JetSampler& sampler,
                                                        std::uint64_t count,
                                                        unsigned threads = 1) {
  std::vector<Eigen::VectorXd> eigs(count);
  parallel_for(count, threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) eigs[i] = hessian_eigenvalues(sampler(i));
  });
  return eigs;
}

}  // namespace curvgrf

#endif  // CURVGRF_ENSEMBLE_HPP_
