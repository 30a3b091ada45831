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

#include "cvlab/gaussian_state.hpp"

namespace cvlab {

// Marginal-matching tolerance for the three-mode protocol.
inline constexpr double kMarginalTol = 1e-10;

class ProtocolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Beam splitter of transmissivity tau between two labelled modes.
///
/// Output a = sqrt(tau) a + sqrt(1-tau) b, output b = sqrt(tau) b - sqrt(1-tau) a:
/// the part of mode_a reflected into mode_b picks up the minus sign.
struct BeamSplitterSpec {
  double tau = 0.5;
  int mode_a = 0;
  int mode_b = 1;
};

/// 4x4 beam splitter acting on modes (0, 1).
SymplecticOp bs_symplectic(double tau);

/// Beam splitter embedded in an n-mode register.
SymplecticOp beam_splitter(int n_modes, const BeamSplitterSpec& spec);

/// Local blocks of a two-mode CM: [[sigma1, sigma12], [sigma12^T, sigma2]].
struct TwoModeBlocks {
  Matrix2 sigma1;
  Matrix2 sigma2;
  Matrix2 sigma12;

  Matrix assemble() const;
  static TwoModeBlocks from_state(const GaussianState& state);
};

/// Mixes two single-mode CMs on a beam splitter (computed by congruence).
TwoModeBlocks mix_two(const Matrix2& sigma1, const Matrix2& sigma2, double tau);

/// Splits `source` against vacuum on a beam splitter of transmissivity
/// t_split. Mode 0 keeps the transmitted fraction t, mode 1 gets 1 - t; for a
/// thermal source the cross block is +sqrt(t(1-t)) N I.
GaussianState prepare_discordant_pair(const SingleModeSpec& source, double t_split);

/// Probe mode 1 plus a discordant pair (2, 3) prepared from `source`;
/// modes 1 and 2 are then mixed at tau_mix.
struct ThreeModeProtocol {
  SingleModeSpec probe;
  SingleModeSpec source;
  double t_split = 0.5;
  double tau_mix = 0.5;

  /// Protocol whose probe equals the mode-2 marginal of the split source.
  static ThreeModeProtocol matched(const SingleModeSpec& source, double t_split, double tau_mix);
};

struct ThreeModeRun {
  GaussianState input;
  GaussianState output;
};

/// Throws ProtocolError unless the probe matches the mode-2 marginal.
ThreeModeRun run_three_mode(const ThreeModeProtocol& protocol);

struct PolarizationFilteredCms {
  GaussianState horizontal;  // beam 1 (H) mixed with vacuum
  GaussianState vertical;    // vacuum mixed with beam 2 (V)
};

/// Two-mode CMs seen behind H and V polarizers after a balanced beam splitter
/// fed with orthogonally polarized beams.
PolarizationFilteredCms polarization_filtered_cms(const SingleModeSpec& beam1_h,
                                                  const SingleModeSpec& beam2_v);

}  // namespace cvlab
