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

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cvlab {

using Matrix  = Eigen::MatrixXd;
using Matrix2 = Eigen::Matrix2d;

// Covariance matrices use vacuum variance 1/2 (hbar = 1) and interleaved
// quadrature ordering (x1, p1, x2, p2, ...).
inline constexpr double kVacuumVariance = 0.5;

// Symplectic eigenvalues may dip this far below 1/2 and still count as physical.
inline constexpr double kPhysicalityTol = 1e-9;

// Negative radicands / eigenvalues within this margin are clamped to zero.
inline constexpr double kClampTol = 1e-12;

// Tolerance on S Omega S^T == Omega.
inline constexpr double kSymplecticTol = 1e-10;

class UnphysicalStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single-mode squeezed thermal state described by its total photon number
/// and the fraction of those photons that come from squeezing.
struct SingleModeSpec {
  double n_tot = 0.0;
  double beta  = 0.0;

  /// Throws std::domain_error if n_tot < 0 or beta is outside [0, 1].
  void validate() const;

  double thermal_photons() const { return (1.0 - beta) * n_tot; }

  /// Squeezing parameter r >= 0 with f+/f- = exp(4r).
  double squeezing() const;

  static SingleModeSpec vacuum() { return {0.0, 0.0}; }
  static SingleModeSpec thermal(double n) { return {n, 0.0}; }
  static SingleModeSpec squeezed_vacuum(double n) { return {n, 1.0}; }
};

/// Diag{f+, f-} with f(N, beta) = 1/2 + N +- sqrt(beta N [1 + N (2 - beta)]).
Matrix2 single_mode_cm(const SingleModeSpec& spec);

/// Inverse of single_mode_cm for diagonal CMs with cm(0,0) >= cm(1,1).
SingleModeSpec spec_from_cm(const Matrix2& cm);

/// Block-diagonal Omega with [[0, 1], [-1, 0]] blocks.
Matrix symplectic_form(int n_modes);

/// Sorted (ascending) symplectic eigenvalues of an arbitrary symmetric 2n x 2n
/// matrix. Positive-definite input goes through a symmetric eigensolver;
/// anything else falls back to the moduli of the eigenvalues of Omega * cm.
std::vector<double> symplectic_eigenvalues(const Matrix& cm);

/// True when cm is symmetric, positive definite and every symplectic
/// eigenvalue is at least 1/2 - tol.
bool is_physical(const Matrix& cm, double tol = kPhysicalityTol);

/// Immutable zero-mean n-mode Gaussian state.
class GaussianState {
 public:
  /// Symmetrizes cm and rejects it unless it is a physical covariance matrix.
  explicit GaussianState(const Matrix& cm);

  static GaussianState vacuum(int n_modes = 1);
  static GaussianState thermal(double n_photons);
  static GaussianState single_mode(const SingleModeSpec& spec);

  int n_modes() const { return static_cast<int>(cm_.rows() / 2); }
  const Matrix& cm() const { return cm_; }

  /// 2x2 block coupling modes i and j.
  Matrix2 block(int i, int j) const;

 private:
  Matrix cm_;
};

std::vector<double> symplectic_eigenvalues(const GaussianState& state);

/// Congruence by a matrix satisfying S Omega S^T = Omega.
class SymplecticOp {
 public:
  explicit SymplecticOp(Matrix s);

  static SymplecticOp identity(int n_modes);

  int n_modes() const { return static_cast<int>(s_.rows() / 2); }
  const Matrix& matrix() const { return s_; }

 private:
  Matrix s_;
};

GaussianState tensor(std::span<const GaussianState> states);
GaussianState tensor(std::initializer_list<GaussianState> states);

/// Keeps the listed modes (0-based, in the given order) and discards the rest.
GaussianState partial_trace(const GaussianState& state, std::span<const int> keep);
GaussianState partial_trace(const GaussianState& state, std::initializer_list<int> keep);

GaussianState apply_symplectic(const GaussianState& state, const SymplecticOp& op);

}  // namespace cvlab
