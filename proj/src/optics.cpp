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

#include "cvlab/optics.hpp"

#include <cmath>

#include <fmt/format.h>

namespace cvlab {

namespace {

void check_transmissivity(double tau, const char* name)
{
  if (!std::isfinite(tau) || tau < 0.0 || tau > 1.0) {
    throw std::domain_error(fmt::format("{} must lie in [0, 1], got {}", name, tau));
  }
}

}  // namespace

SymplecticOp bs_symplectic(double tau)
{
  return beam_splitter(2, {tau, 0, 1});
}

SymplecticOp beam_splitter(int n_modes, const BeamSplitterSpec& spec)
{
  check_transmissivity(spec.tau, "transmissivity");
  if (spec.mode_a == spec.mode_b) throw std::invalid_argument("beam splitter needs two modes");
  for (int m : {spec.mode_a, spec.mode_b}) {
    if (m < 0 || m >= n_modes) {
      throw std::out_of_range(fmt::format("beam splitter mode {} outside {} modes", m, n_modes));
    }
  }

  const double t = std::sqrt(spec.tau);
  const double r = std::sqrt(1.0 - spec.tau);
  const int a    = 2 * spec.mode_a;
  const int b    = 2 * spec.mode_b;

  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int q = 0; q < 2; ++q) {
    s(a + q, a + q) = t;
    s(a + q, b + q) = r;
    s(b + q, a + q) = -r;
    s(b + q, b + q) = t;
  }
  return SymplecticOp(std::move(s));
}

Matrix TwoModeBlocks::assemble() const
{
  Matrix cm(4, 4);
  cm.block<2, 2>(0, 0) = sigma1;
  cm.block<2, 2>(2, 2) = sigma2;
  cm.block<2, 2>(0, 2) = sigma12;
  cm.block<2, 2>(2, 0) = sigma12.transpose();
  return cm;
}

TwoModeBlocks TwoModeBlocks::from_state(const GaussianState& state)
{
  if (state.n_modes() != 2) {
    throw std::invalid_argument(fmt::format("expected 2 modes, got {}", state.n_modes()));
  }
  return {state.block(0, 0), state.block(1, 1), state.block(0, 1)};
}

TwoModeBlocks mix_two(const Matrix2& sigma1, const Matrix2& sigma2, double tau)
{
  const GaussianState in =
    tensor({GaussianState(Matrix(sigma1)), GaussianState(Matrix(sigma2))});
  return TwoModeBlocks::from_state(apply_symplectic(in, bs_symplectic(tau)));
}

GaussianState prepare_discordant_pair(const SingleModeSpec& source, double t_split)
{
  check_transmissivity(t_split, "split transmissivity");
  // The vacuum port is mode_a so the minus sign lands on the vacuum's
  // reflected arm and the source's cross block stays positive.
  const GaussianState in = tensor({GaussianState::single_mode(source), GaussianState::vacuum()});
  return apply_symplectic(in, beam_splitter(2, {t_split, 1, 0}));
}

ThreeModeProtocol ThreeModeProtocol::matched(const SingleModeSpec& source, double t_split,
                                             double tau_mix)
{
  const GaussianState pair = prepare_discordant_pair(source, t_split);
  return {spec_from_cm(pair.block(0, 0)), source, t_split, tau_mix};
}

ThreeModeRun run_three_mode(const ThreeModeProtocol& protocol)
{
  check_transmissivity(protocol.tau_mix, "mixing transmissivity");
  const GaussianState probe = GaussianState::single_mode(protocol.probe);
  const GaussianState pair  = prepare_discordant_pair(protocol.source, protocol.t_split);

  const double mismatch = (probe.cm() - Matrix(pair.block(0, 0))).cwiseAbs().maxCoeff();
  if (mismatch > kMarginalTol) {
    throw ProtocolError(fmt::format(
      "probe state differs from the mode-2 marginal by {:.3e}; identical inputs are required",
      mismatch));
  }

  GaussianState input  = tensor({probe, pair});
  GaussianState output = apply_symplectic(input, beam_splitter(3, {protocol.tau_mix, 0, 1}));
  return {std::move(input), std::move(output)};
}

PolarizationFilteredCms polarization_filtered_cms(const SingleModeSpec& beam1_h,
                                                  const SingleModeSpec& beam2_v)
{
  const SymplecticOp balanced = bs_symplectic(0.5);
  const GaussianState vac     = GaussianState::vacuum();
  // Each polarization sees its own beam in one port and vacuum in the other.
  return {
    apply_symplectic(tensor({GaussianState::single_mode(beam1_h), vac}), balanced),
    apply_symplectic(tensor({vac, GaussianState::single_mode(beam2_v)}), balanced),
  };
}

}  // namespace cvlab
