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
#include <string_view>
#include <utility>
#include <vector>

#include "cvlab/philox.hpp"

// Frame-by-frame Monte Carlo of multimode pseudo-thermal beams. Each spatial
// mode is a classical circular-Gaussian amplitude; detectors integrate
// |amplitude|^2 over the modes of their area.
namespace cvlab::speckle {

using Amplitude = std::complex<double>;
using Field     = std::vector<Amplitude>;

struct JonesMode {
  Amplitude h;
  Amplitude v;
};
using JonesField = std::vector<JonesMode>;

enum class Scenario { interference, erasure };

/// Polarizer axis in front of each detector (erasure bench only).
enum class Basis { none, deg45, V, H };

std::string_view to_string(Scenario s);
std::string_view to_string(Basis b);
Scenario parse_scenario(std::string_view text);
Basis parse_basis(std::string_view text);

/// Random streams, one per physical source of randomness.
enum class Stream : std::uint32_t {
  source1        = 1,
  source2        = 2,
  unmatched_pair = 3,  // modes of beam 3 not matched to beam 2 on the detector
  unmatched_mix  = 4,  // modes of beam 2 not matched to beam 1 at the mixing BS
};

CounterRng stream_rng(std::uint64_t seed, Stream stream);

struct BenchConfig {
  int modes            = 100;
  std::int64_t frames  = 100000;
  double mean_photons  = 1.0;  // per mode, beams 1 and 2
  double tau_mix       = 0.5;
  double t_split       = 0.5;
  double eta           = 1.0;  // mode-matching efficiency
  std::uint64_t seed   = 42;
  Scenario scenario    = Scenario::interference;
  Basis analysis_basis = Basis::none;

  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

/// Integrated intensities per frame, before ("in") and after ("out") the
/// mixing beam splitter, for beams 1, 2, 3.
struct FrameBatch {
  std::uint64_t first_frame = 0;
  std::array<std::vector<double>, 3> in;
  std::array<std::vector<double>, 3> out;

  std::size_t size() const { return in[0].size(); }
};

/// M independent circular complex Gaussian amplitudes with E|a|^2 = mean,
/// drawn at (frame, mode) addresses of `rng`.
Field sample_thermal_field(const CounterRng& rng, std::uint64_t frame, int modes, double mean);

/// (field sqrt(t), field sqrt(1 - t)): the same speckle realization in both arms.
std::pair<Field, Field> split_field(const Field& field, double t);

/// Amplitude beam splitter: out_a = sqrt(tau) a + sqrt(1-tau) b,
/// out_b = sqrt(tau) b - sqrt(1-tau) a.
std::pair<Field, Field> mix_fields(const Field& a, const Field& b, double tau);

/// Number of unmatched modes, round((1 - eta) M).
int unmatched_modes(int modes, double eta);

/// Replaces the first `replacement.size()` modes of `field`.
Field substitute_modes(const Field& field, const Field& replacement);

/// mix_fields with imperfect mode matching: the first unmatched_modes(M, eta)
/// modes of b are replaced by `independent` (a thermal field of equal mean)
/// before mixing.
std::pair<Field, Field> mix_fields(const Field& a, const Field& b, double tau, double eta,
                                   const Field& independent);

JonesField polarize_h(const Field& field);
JonesField polarize_v(const Field& field);

/// Per-component beam splitter; orthogonal polarizations do not interfere.
std::pair<JonesField, JonesField> mix_jones(const JonesField& a, const JonesField& b, double tau);

/// Sum over modes of |amplitude|^2.
double detect(const Field& field);

/// Intensity behind a polarizer along `basis` (none = no polarizer).
double detect(const JonesField& field, Basis basis);

/// Runs frames [0, config.frames) with OpenMP; bit-identical for any worker count.
FrameBatch run_bench(const BenchConfig& config);

/// Runs frames [begin, end) only.
FrameBatch run_frames(const BenchConfig& config, std::uint64_t begin, std::uint64_t end);

namespace reference {

/// Straightforward serial bench built from the field primitives above.
FrameBatch run_bench(const BenchConfig& config);

}  // namespace reference

}  // namespace cvlab::speckle
