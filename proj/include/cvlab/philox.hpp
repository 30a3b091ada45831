/* Copyright 2026 The cvlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace cvlab {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey     = std::array<std::uint32_t, 2>;

// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

/// Uniform double in (0, 1) built from the top 52 bits of a 64-bit word.
/// Both ends are exactly representable, so 0 and 1 never occur.
inline double to_open_unit(std::uint64_t bits)
{
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Stateless random source addressed by (seed, stream, frame, index).
///
/// Every draw is a pure function of its address, so frames can be generated
/// in any order or in isolation.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint32_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream)
  {}

  PhiloxCounter block(std::uint64_t frame, std::uint32_t index) const
  {
    return philox4x32_10(
      {index, static_cast<std::uint32_t>(frame), static_cast<std::uint32_t>(frame >> 32), stream_},
      key_);
  }

  /// Pair of uniforms in (0, 1) from one Philox block.
  std::array<double, 2> uniforms(std::uint64_t frame, std::uint32_t index) const;

  /// Circular complex normal with E|z|^2 = 1 (Box-Muller on one block).
  std::complex<double> circular_normal(std::uint64_t frame, std::uint32_t index) const;

 private:
  PhiloxKey key_;
  std::uint32_t stream_;
};

}  // namespace cvlab
