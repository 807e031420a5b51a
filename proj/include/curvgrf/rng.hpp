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

#ifndef CURVGRF_RNG_HPP_
#define CURVGRF_RNG_HPP_

#include <array>
#include <cstdint>

#include <boost/math/special_functions/erf.hpp>

namespace curvgrf {

// Philox 4x32-10 counter-based generator (Salmon et al., SC'11 constants).
// Output is a pure function of (key, counter), so any indexing scheme over
// samples yields the same stream regardless of execution order or thread
// count.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kW32A;
      key[1] += kW32B;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kW32A = 0x9E3779B9u;
  static constexpr std::uint32_t kW32B = 0xBB67AE85u;
  static constexpr std::uint32_t kM4x32A = 0xD2511F53u;
  static constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

  static Counter single_round(const Counter& ctr, const Key& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM4x32A) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM4x32B) * ctr[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
            static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
            static_cast<std::uint32_t>(p0)};
  }
};

namespace detail {

// Uniform in the open interval (0, 1), 53-bit resolution.
inline double uniform53(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Standard normal by the inverse CDF; one 64-bit word per deviate.
inline double standard_normal(std::uint64_t bits) {
  constexpr double kSqrt2 = 1.4142135623730951;
  return kSqrt2 * boost::math::erf_inv(2.0 * uniform53(bits) - 1.0);
}

}  // namespace detail

// Substream of standard normal deviates keyed by (seed, index, tag).  One
// Philox block provides two doubles; draws use the inverse normal CDF, so
// exactly one uniform is consumed per deviate and substreams never interact.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t index, std::uint32_t tag = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        base_{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0, tag} {}

  double next_uniform() { return detail::uniform53(next_bits()); }

  double next_normal() { return detail::standard_normal(next_bits()); }

 private:
  std::uint64_t next_bits() {
    if (phase_ == 0) {
      Philox4x32::Counter ctr = base_;
      ctr[2] = block_;
      buffer_ = Philox4x32::block(ctr, key_);
      ++block_;
    }
    const int i = 2 * phase_;
    phase_ ^= 1;
    return (static_cast<std::uint64_t>(buffer_[i]) << 32) | buffer_[i + 1];
  }

  Philox4x32::Key key_;
  Philox4x32::Counter base_;
  Philox4x32::Counter buffer_{};
  std::uint32_t block_ = 0;
  int phase_ = 0;
};

}  // namespace curvgrf

#endif  // CURVGRF_RNG_HPP_
