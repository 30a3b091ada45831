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

#include "cvlab/gaussian_state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace cvlab {

namespace {

double clamp_small_negative(double x, const char* what)
{
  if (x >= 0.0) return x;
  if (x >= -kClampTol) return 0.0;
  throw std::domain_error(fmt::format("{} is negative ({:.3e})", what, x));
}

double max_asymmetry(const Matrix& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

void check_square_even(const Matrix& m, const char* what)
{
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw std::invalid_argument(
      fmt::format("{} must be a non-empty 2n x 2n matrix, got {}x{}", what, m.rows(), m.cols()));
  }
}

// Pairs up 2n values that come in degenerate couples and returns n of them.
std::vector<double> pair_up(std::vector<double> values)
{
  std::sort(values.begin(), values.end());
  std::vector<double> out(values.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = 0.5 * (values[2 * k] + values[2 * k + 1]);
  }
  return out;
}

}  // namespace

void SingleModeSpec::validate() const
{
  if (!std::isfinite(n_tot) || n_tot < 0.0) {
    throw std::domain_error(fmt::format("photon number must be >= 0, got {}", n_tot));
  }
  if (!std::isfinite(beta) || beta < 0.0 || beta > 1.0) {
    throw std::domain_error(fmt::format("squeezing fraction must lie in [0, 1], got {}", beta));
  }
}

double SingleModeSpec::squeezing() const
{
  Matrix2 cm = single_mode_cm(*this);
  return 0.25 * std::log(cm(0, 0) / cm(1, 1));
}

Matrix2 single_mode_cm(const SingleModeSpec& spec)
{
  spec.validate();
  const double n = spec.n_tot;
  const double b = spec.beta;
  const double root =
    std::sqrt(clamp_small_negative(b * n * (1.0 + n * (2.0 - b)), "squeezing radicand"));

  Matrix2 cm = Matrix2::Zero();
  cm(0, 0) = kVacuumVariance + n + root;
  cm(1, 1) = kVacuumVariance + n - root;

  // det = (1/2 + n_th)^2 holds analytically; catch any formula drift.
  const double purity = kVacuumVariance + spec.thermal_photons();
  const double det    = cm(0, 0) * cm(1, 1);
  if (std::abs(det - purity * purity) > 1e-9 * std::max(1.0, purity * purity)) {
    throw NumericalError(fmt::format("single-mode determinant {} != {}", det, purity * purity));
  }
  return cm;
}

SingleModeSpec spec_from_cm(const Matrix2& cm)
{
  if (std::abs(cm(0, 1)) > kClampTol || std::abs(cm(1, 0)) > kClampTol) {
    throw std::invalid_argument("spec_from_cm expects a diagonal covariance matrix");
  }
  const double a = cm(0, 0);
  const double b = cm(1, 1);
  if (a < b - kClampTol) {
    throw std::invalid_argument("spec_from_cm expects the squeezed quadrature second");
  }
  const double n = clamp_small_negative(0.5 * (a + b) - kVacuumVariance, "photon number");
  const double n_th =
    clamp_small_negative(std::sqrt(std::max(a * b, 0.0)) - kVacuumVariance, "thermal photons");
  if (n == 0.0) return SingleModeSpec::vacuum();
  SingleModeSpec spec{n, std::clamp(1.0 - n_th / n, 0.0, 1.0)};
  spec.validate();
  return spec;
}

Matrix symplectic_form(int n_modes)
{
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

std::vector<double> symplectic_eigenvalues(const Matrix& cm)
{
  check_square_even(cm, "covariance matrix");
  const int n     = static_cast<int>(cm.rows() / 2);
  const Matrix sym = 0.5 * (cm + cm.transpose());
  const Matrix omega = symplectic_form(n);

  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigen-decomposition of covariance matrix did not converge");
  }

  if (es.eigenvalues().minCoeff() > 0.0) {
    // sqrt(cm) Omega sqrt(cm) is antisymmetric with eigenvalues +-i d_k, so
    // K^T K has each d_k^2 twice.
    const Matrix root = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                        es.eigenvectors().transpose();
    const Matrix k = root * omega * root;
    Eigen::SelfAdjointEigenSolver<Matrix> ks(k.transpose() * k, Eigen::EigenvaluesOnly);
    if (ks.info() != Eigen::Success) {
      throw NumericalError("symplectic spectrum did not converge");
    }
    std::vector<double> sq(ks.eigenvalues().data(), ks.eigenvalues().data() + 2 * n);
    std::vector<double> d = pair_up(std::move(sq));
    for (double& v : d) v = std::sqrt(std::max(v, 0.0));
    return d;
  }

  Eigen::EigenSolver<Matrix> gs(omega * sym, false);
  if (gs.info() != Eigen::Success) {
    throw NumericalError("symplectic spectrum did not converge");
  }
  std::vector<double> moduli(2 * n);
  for (int i = 0; i < 2 * n; ++i) moduli[i] = std::abs(gs.eigenvalues()[i]);
  return pair_up(std::move(moduli));
}

bool is_physical(const Matrix& cm, double tol)
{
  if (cm.rows() != cm.cols() || cm.rows() == 0 || cm.rows() % 2 != 0) return false;
  if (!cm.allFinite()) return false;
  const double scale = std::max(1.0, cm.cwiseAbs().maxCoeff());
  if (max_asymmetry(cm) > 1e-9 * scale) return false;

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (cm + cm.transpose()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) return false;

  const auto d = symplectic_eigenvalues(cm);
  return d.front() >= kVacuumVariance - tol;
}

GaussianState::GaussianState(const Matrix& cm)
{
  check_square_even(cm, "covariance matrix");
  if (!cm.allFinite()) throw UnphysicalStateError("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, cm.cwiseAbs().maxCoeff());
  if (max_asymmetry(cm) > 1e-9 * scale) {
    throw UnphysicalStateError("covariance matrix is not symmetric");
  }
  cm_ = 0.5 * (cm + cm.transpose());
  if (!is_physical(cm_)) {
    const auto d = symplectic_eigenvalues(cm_);
    throw UnphysicalStateError(fmt::format(
      "covariance matrix violates the uncertainty principle (smallest symplectic eigenvalue {})",
      d.front()));
  }
}

GaussianState GaussianState::vacuum(int n_modes)
{
  if (n_modes < 1) throw std::invalid_argument("vacuum needs at least one mode");
  return GaussianState(kVacuumVariance * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState GaussianState::thermal(double n_photons)
{
  return single_mode(SingleModeSpec::thermal(n_photons));
}

GaussianState GaussianState::single_mode(const SingleModeSpec& spec)
{
  return GaussianState(Matrix(single_mode_cm(spec)));
}

Matrix2 GaussianState::block(int i, int j) const
{
  if (i < 0 || j < 0 || i >= n_modes() || j >= n_modes()) {
    throw std::out_of_range(fmt::format("block ({}, {}) outside {} modes", i, j, n_modes()));
  }
  return cm_.block<2, 2>(2 * i, 2 * j);
}

std::vector<double> symplectic_eigenvalues(const GaussianState& state)
{
  return symplectic_eigenvalues(state.cm());
}

SymplecticOp::SymplecticOp(Matrix s) : s_(std::move(s))
{
  check_square_even(s_, "symplectic matrix");
  const Matrix omega = symplectic_form(n_modes());
  const double err   = (s_ * omega * s_.transpose() - omega).cwiseAbs().maxCoeff();
  if (!(err <= kSymplecticTol)) {
    throw std::invalid_argument(
      fmt::format("matrix is not symplectic: |S Omega S^T - Omega|_max = {:.3e}", err));
  }
}

SymplecticOp SymplecticOp::identity(int n_modes)
{
  return SymplecticOp(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState tensor(std::span<const GaussianState> states)
{
  if (states.empty()) throw std::invalid_argument("tensor of zero states");
  Eigen::Index dim = 0;
  for (const auto& s : states) dim += s.cm().rows();

  Matrix cm      = Matrix::Zero(dim, dim);
  Eigen::Index at = 0;
  for (const auto& s : states) {
    const auto k = s.cm().rows();
    cm.block(at, at, k, k) = s.cm();
    at += k;
  }
  return GaussianState(cm);
}

GaussianState tensor(std::initializer_list<GaussianState> states)
{
  return tensor(std::span<const GaussianState>(states.begin(), states.size()));
}

GaussianState partial_trace(const GaussianState& state, std::span<const int> keep)
{
  if (keep.empty()) throw std::invalid_argument("partial_trace must keep at least one mode");
  std::vector<bool> seen(state.n_modes(), false);
  for (int m : keep) {
    if (m < 0 || m >= state.n_modes()) {
      throw std::out_of_range(fmt::format("mode {} outside {} modes", m, state.n_modes()));
    }
    if (seen[m]) throw std::invalid_argument(fmt::format("mode {} listed twice", m));
    seen[m] = true;
  }

  const auto n = static_cast<Eigen::Index>(keep.size());
  Matrix cm(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      cm.block<2, 2>(2 * i, 2 * j) = state.cm().block<2, 2>(2 * keep[i], 2 * keep[j]);
    }
  }
  return GaussianState(cm);
}

GaussianState partial_trace(const GaussianState& state, std::initializer_list<int> keep)
{
  return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticOp& op)
{
  if (op.n_modes() != state.n_modes()) {
    throw std::invalid_argument(fmt::format(
      "symplectic op acts on {} modes, state has {}", op.n_modes(), state.n_modes()));
  }
  const Matrix& s = op.matrix();
  return GaussianState(s * state.cm() * s.transpose());
}

}  // namespace cvlab
