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

#include "cvlab/philox.hpp"

#include <cmath>
#include <numbers>

namespace cvlab {

namespace {

constexpr std::uint32_t kMul0  = 0xD2511F53u;
constexpr std::uint32_t kMul1  = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key)
{
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::array<double, 2> CounterRng::uniforms(std::uint64_t frame, std::uint32_t index) const
{
  const PhiloxCounter r = block(frame, index);
  const std::uint64_t w0 = (static_cast<std::uint64_t>(r[1]) << 32) | r[0];
  const std::uint64_t w1 = (static_cast<std::uint64_t>(r[3]) << 32) | r[2];
  return {to_open_unit(w0), to_open_unit(w1)};
}

std::complex<double> CounterRng::circular_normal(std::uint64_t frame, std::uint32_t index) const
{
  const auto [u0, u1] = uniforms(frame, index);
  // |z|^2 = -ln u0 is exactly Exp(1).
  const double radius = std::sqrt(-std::log(u0));
  const double angle  = 2.0 * std::numbers::pi * u1;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace cvlab
