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

#include <optional>

#include "cvlab/gaussian_state.hpp"
#include "cvlab/parallel.hpp"

namespace cvlab {

// All entropies are in nats.

/// Rescales a CM from the vacuum = 1/2 convention to vacuum = identity
/// (factor 2). `to_half_vacuum` undoes it.
Matrix to_unit_vacuum(const Matrix& cm);
Matrix to_half_vacuum(const Matrix& cm);

/// Entropy contribution of one symplectic eigenvalue d >= 1/2:
/// (d + 1/2) ln(d + 1/2) - (d - 1/2) ln(d - 1/2); exactly 0 for d within 1e-12 of 1/2.
double entropy_term(double d);

/// von Neumann entropy.
double entropy(const GaussianState& state);

struct EntropyReport {
  double s1  = 0.0;
  double s2  = 0.0;
  double s12 = 0.0;
  double mutual_information = 0.0;
  // Entropy gained by each mode relative to a product input, when known.
  std::optional<double> delta_s1;
  std::optional<double> delta_s2;
};

EntropyReport mutual_information(const GaussianState& state);

/// Same, with the entropy change of each mode relative to the product input
/// `input1 (x) input2` that was unitarily evolved into `state`.
EntropyReport mutual_information(const GaussianState& state, const GaussianState& input1,
                                 const GaussianState& input2);

/// Party on which the Gaussian measurement is performed.
enum class DiscordSide { A, B };

/// Pure single-mode measurement seed R(phi) diag(s, 1/s) R(phi)^T (unit-vacuum
/// units). s = +inf is homodyne detection.
struct MeasurementParams {
  double squeezing = 1.0;
  double angle     = 0.0;
};

enum class DiscordBranch { product, general, homodyne, search };

struct DiscordResult {
  double value = 0.0;
  DiscordSide side = DiscordSide::B;
  DiscordBranch branch = DiscordBranch::general;
  // Minimal determinant of the conditional CM of the unmeasured mode
  // (unit-vacuum units).
  double min_conditional_det = 0.0;
  std::optional<MeasurementParams> minimizer;
  bool converged = true;
};

/// Closed-form Gaussian discord from the local symplectic invariants.
DiscordResult gaussian_discord(const GaussianState& state, DiscordSide side);

struct OracleOptions {
  int grid = 64;                 // grid points per axis
  int max_refinement = 20000;    // compass-search iterations
  double step_tol = 1e-12;
  Execution execution = Execution::parallel;
};

/// Brute-force Gaussian discord: grid search plus compass refinement of the
/// conditional entropy over pure single-mode Gaussian measurements.
DiscordResult discord_oracle(const GaussianState& state, DiscordSide side,
                             const OracleOptions& options = {});

/// Determinant of the conditional CM of mode A after measuring mode B with
/// seed parameters (rho = 1/s in [0, 1], phi). Blocks are unit-vacuum.
double conditional_det(const Matrix2& a, const Matrix2& b, const Matrix2& c, double rho,
                       double phi);

}  // namespace cvlab
