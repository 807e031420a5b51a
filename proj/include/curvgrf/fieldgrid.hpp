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

#ifndef CURVGRF_FIELDGRID_HPP_
#define CURVGRF_FIELDGRID_HPP_

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "curvgrf/corrmodel.hpp"
#include "curvgrf/ensemble.hpp"
#include "curvgrf/rng.hpp"

namespace curvgrf {

// Periodic realization of an isotropic Gaussian field on a regular grid,
// stored in C order (last axis fastest).
struct FieldGrid {
  Eigen::Index n = 2;
  std::vector<Eigen::Index> shape;
  double spacing = 0.0;
  CorrelationModel model;
  std::uint64_t seed = 0;
  std::uint32_t realization = 0;
  std::vector<double> values;

  Eigen::Index total() const {
    Eigen::Index t = 1;
    for (Eigen::Index s : shape) t *= s;
    return t;
  }
};

namespace detail {

// In-place 1D transforms along one axis of a C-ordered n-D array.
inline void fft_axis(std::vector<std::complex<double>>& data,
                     const std::vector<Eigen::Index>& shape, std::size_t axis, bool forward) {
  Eigen::Index stride = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) stride *= shape[a];
  const Eigen::Index len = shape[axis];
  const Eigen::Index block = stride * len;
  const Eigen::Index total = static_cast<Eigen::Index>(data.size());

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> line(len), out(len);
  for (Eigen::Index base = 0; base < total; base += block) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      for (Eigen::Index k = 0; k < len; ++k) line[k] = data[base + off + k * stride];
      if (forward)
        fft.fwd(out, line);
      else
        fft.inv(out, line);  // includes the 1/len scale
      for (Eigen::Index k = 0; k < len; ++k) data[base + off + k * stride] = out[k];
    }
  }
}

// Spectral density of the gaussian kernel sigma^2 exp(-s^2/(2 l^2)) on R^n.
inline double gaussian_spectral_density(double k_norm2, double lengthscale, double variance,
                                        int n) {
  constexpr double kTwoPi = 6.283185307179586;
  return variance * std::pow(kTwoPi, 0.5 * n) * std::pow(lengthscale, n) *
         std::exp(-0.5 * lengthscale * lengthscale * k_norm2);
}

}  // namespace detail

// Spectral synthesis: f(x) = sum_m sqrt(c_m) xi_m exp(i k_m x) with mode
// variances c_m = S(k_m)/V from the gaussian kernel's spectrum and complex
// unit Gaussians xi_m, Hermitian-symmetric so the field is real.  Exact for
// the periodic field because the spectrum is positive and its wrap-around
// mass is negligible once every axis spans >= 12 l.
//
// The noise xi_m is keyed by the signed wavevector index and the realization
// tag, not by array position.  One (seed, realization) therefore names one
// continuous field: regridding the same domain at a finer resolution yields
// the same realization sampled more densely, which is what makes grid
// refinement checks meaningful.
inline FieldGrid synthesize(const CorrelationModel& model, std::vector<Eigen::Index> shape,
                            double spacing, std::uint64_t seed, std::uint32_t realization = 0) {
  if (model.kind != CorrelationKind::kGaussian)
    throw std::invalid_argument("synthesize: only the gaussian model has an analytic spectrum here");
  const int n = static_cast<int>(shape.size());
  if (n != 2 && n != 3) throw std::invalid_argument("synthesize: dimension must be 2 or 3");
  if (!(spacing > 0.0)) throw std::invalid_argument("synthesize: spacing must be positive");
  for (Eigen::Index s : shape) {
    if (s < 4) throw std::invalid_argument("synthesize: each axis needs at least 4 points");
    if (static_cast<double>(s) * spacing < 12.0 * model.lengthscale)
      throw std::invalid_argument("synthesize: domain must span at least 12 lengthscales per axis");
  }

  FieldGrid grid;
  grid.n = n;
  grid.shape = std::move(shape);
  grid.spacing = spacing;
  grid.model = model;
  grid.seed = seed;
  grid.realization = realization;

  const std::size_t rank = grid.shape.size();
  const Eigen::Index total = grid.total();
  double volume = 1.0;
  for (Eigen::Index s : grid.shape) volume *= static_cast<double>(s) * spacing;

  std::vector<Eigen::Index> stride(rank);
  Eigen::Index acc = 1;
  for (std::size_t a = rank; a-- > 0;) {
    stride[a] = acc;
    acc *= grid.shape[a];
  }

  constexpr double kTwoPi = 6.283185307179586;
  constexpr double kInvSqrt2 = 0.7071067811865476;
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};

  std::vector<std::complex<double>> work(static_cast<std::size_t>(total));
  std::vector<Eigen::Index> idx(rank, 0), signed_m(rank), negated(rank);
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    // Signed frequency components; 0 and the Nyquist index are their own
    // negation on the periodic lattice.
    bool self_conjugate = true;
    int order = 0;  // sign of the first component where m and -m differ
    for (std::size_t a = 0; a < rank; ++a) {
      const Eigen::Index size = grid.shape[a];
      const Eigen::Index s = 2 * idx[a] <= size ? idx[a] : idx[a] - size;
      signed_m[a] = s;
      negated[a] = (s == 0 || 2 * s == size) ? s : -s;
      if (self_conjugate && negated[a] != s) {
        self_conjugate = false;
        order = s > negated[a] ? 1 : -1;
      }
    }
    const bool canonical = self_conjugate || order > 0;
    if (canonical) {
      double k2 = 0.0;
      for (std::size_t a = 0; a < rank; ++a) {
        const double k = kTwoPi * static_cast<double>(signed_m[a]) /
                         (static_cast<double>(grid.shape[a]) * spacing);
        k2 += k * k;
      }
      const double amplitude = std::sqrt(
          detail::gaussian_spectral_density(k2, model.lengthscale, model.variance, n) / volume);

      Philox4x32::Counter counter{static_cast<std::uint32_t>(signed_m[0]),
                                  static_cast<std::uint32_t>(rank > 1 ? signed_m[1] : 0),
                                  static_cast<std::uint32_t>(rank > 2 ? signed_m[2] : 0),
                                  realization};
      const Philox4x32::Counter words = Philox4x32::block(counter, key);
      const double z0 = detail::standard_normal(
          (static_cast<std::uint64_t>(words[0]) << 32) | words[1]);
      if (self_conjugate) {
        work[static_cast<std::size_t>(flat)] = amplitude * z0;
      } else {
        const double z1 = detail::standard_normal(
            (static_cast<std::uint64_t>(words[2]) << 32) | words[3]);
        const std::complex<double> coeff =
            amplitude * kInvSqrt2 * std::complex<double>(z0, z1);
        Eigen::Index partner = 0;
        for (std::size_t a = 0; a < rank; ++a)
          partner += (negated[a] < 0 ? negated[a] + grid.shape[a] : negated[a]) * stride[a];
        work[static_cast<std::size_t>(flat)] = coeff;
        work[static_cast<std::size_t>(partner)] = std::conj(coeff);
      }
    }
    for (std::size_t a = rank; a-- > 0;) {
      if (++idx[a] < grid.shape[a]) break;
      idx[a] = 0;
    }
  }

  // f = sum_m A_m e^{+ik_m x}: the scaled inverse transforms divide by the
  // total point count, so scale the coefficients up front.
  for (auto& v : work) v *= static_cast<double>(total);
  for (std::size_t axis = 0; axis < rank; ++axis)
    detail::fft_axis(work, grid.shape, axis, /*forward=*/false);

  grid.values.resize(static_cast<std::size_t>(total));
  for (Eigen::Index i = 0; i < total; ++i)
    grid.values[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i)].real();
  return grid;
}

// Jet at one grid point by fourth-order central differences with periodic
// wrap.  Mixed partials apply the first-derivative stencil along each axis in
// turn, so the Hessian is symmetric by construction.  No degeneracy guard
// here; harvesting applies it.
inline PointJet grid_jet(const FieldGrid& grid, const std::vector<Eigen::Index>& idx) {
  const int n = static_cast<int>(grid.n);
  const double h = grid.spacing;
  if (idx.size() != grid.shape.size()) throw std::invalid_argument("grid_jet: bad index rank");

  std::vector<Eigen::Index> stride(grid.shape.size());
  Eigen::Index acc = 1;
  for (std::size_t a = grid.shape.size(); a-- > 0;) {
    stride[a] = acc;
    acc *= grid.shape[a];
  }

  const auto wrap = [&](std::size_t axis, Eigen::Index shift) {
    Eigen::Index i = idx[axis] + shift;
    const Eigen::Index s = grid.shape[axis];
    if (i < 0) i += s;
    if (i >= s) i -= s;
    return i;
  };
  const auto value_at = [&](int axis_a, Eigen::Index da, int axis_b, Eigen::Index db) {
    Eigen::Index f = 0;
    for (std::size_t a = 0; a < grid.shape.size(); ++a) {
      Eigen::Index shift = 0;
      if (static_cast<int>(a) == axis_a) shift += da;
      if (static_cast<int>(a) == axis_b) shift += db;
      f += wrap(a, shift) * stride[a];
    }
    return grid.values[static_cast<std::size_t>(f)];
  };

  // Offsets and weights of the first-derivative stencil (center weight zero).
  static constexpr int kOff[4] = {-2, -1, 1, 2};
  static constexpr double kD1[4] = {1.0, -8.0, 8.0, -1.0};  // /(12 h)

  PointJet jet;
  jet.gradient.resize(n);
  jet.hessian.resize(n, n);
  const double center = value_at(0, 0, 0, 0);
  for (int a = 0; a < n; ++a) {
    double d1 = 0.0;
    for (int t = 0; t < 4; ++t) d1 += kD1[t] * value_at(a, kOff[t], a, 0);
    jet.gradient[a] = d1 / (12.0 * h);

    double d2 = -30.0 * center;
    d2 += -value_at(a, 2, a, 0) + 16.0 * value_at(a, 1, a, 0) + 16.0 * value_at(a, -1, a, 0) -
          value_at(a, -2, a, 0);
    jet.hessian(a, a) = d2 / (12.0 * h * h);

    for (int b = a + 1; b < n; ++b) {
      double mixed = 0.0;
      for (int t = 0; t < 4; ++t) {
        double inner = 0.0;
        for (int s = 0; s < 4; ++s) inner += kD1[s] * value_at(a, kOff[t], b, kOff[s]);
        mixed += kD1[t] * inner;
      }
      jet.hessian(a, b) = jet.hessian(b, a) = mixed / (144.0 * h * h);
    }
  }
  return jet;
}

struct GridJets {
  std::vector<PointJet> jets;
  std::uint64_t skipped = 0;  // points failing the gradient degeneracy guard
};

// Jets at every grid point, in flat C order, skipping degenerate gradients.
inline GridJets jets_from_grid(const FieldGrid& grid) {
  const Eigen::Index total = grid.total();
  const double grad_scale = std::sqrt(constants(grid.model).grad_var());

  GridJets result;
  result.jets.reserve(static_cast<std::size_t>(total));
  std::vector<Eigen::Index> idx(grid.shape.size(), 0);
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    PointJet jet = grid_jet(grid, idx);
    if (jet.gradient.norm() > 1e-12 * grad_scale)
      result.jets.push_back(std::move(jet));
    else
      ++result.skipped;
    for (std::size_t a = grid.shape.size(); a-- > 0;) {
      if (++idx[a] < grid.shape[a]) break;
      idx[a] = 0;
    }
  }
  return result;
}

}  // namespace curvgrf

#endif  // CURVGRF_FIELDGRID_HPP_
