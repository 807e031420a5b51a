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

#ifndef CURVGRF_QUADRATURE_HPP_
#define CURVGRF_QUADRATURE_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace curvgrf {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

// Adaptive 15-point Gauss-Kronrod on [a, b]; a and b may be infinite.
template <typename Fn>
double integrate(Fn&& fn, double a, double b, double rel_tol = 1e-9,
                 double* error_estimate = nullptr, unsigned max_depth = 15) {
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      fn, a, b, max_depth, rel_tol, &err);
  if (error_estimate) *error_estimate = err;
  return value;
}

// Whole-line integral of a heavy-tailed density via x = tan(theta); the
// sec^2 Jacobian turns polynomial decay into a bounded integrand.
template <typename Fn>
double integrate_real_line_tan(Fn&& fn, double rel_tol = 1e-9, double* error_estimate = nullptr) {
  const auto transformed = [&fn](double theta) {
    const double c = std::cos(theta);
    return fn(std::tan(theta)) / (c * c);
  };
  constexpr double kHalfPi = 1.5707963267948966;
  return integrate(transformed, -kHalfPi, kHalfPi, rel_tol, error_estimate);
}

}  // namespace curvgrf

#endif  // CURVGRF_QUADRATURE_HPP_
