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

#include "cvlab/information.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace cvlab {

namespace {

// Blocks of a two-mode state in unit-vacuum units, ordered so that the
// measured party is always the second mode.
struct MeasuredBlocks {
  Matrix2 a;  // unmeasured
  Matrix2 b;  // measured
  Matrix2 c;  // cross, rows = unmeasured
  double det_total = 0.0;
  std::vector<double> nu;  // symplectic eigenvalues, half-vacuum units
};

MeasuredBlocks measured_blocks(const GaussianState& state, DiscordSide side)
{
  if (state.n_modes() != 2) {
    throw std::invalid_argument(fmt::format("discord needs 2 modes, got {}", state.n_modes()));
  }
  const Matrix s = to_unit_vacuum(state.cm());
  MeasuredBlocks m;
  if (side == DiscordSide::B) {
    m.a = s.block<2, 2>(0, 0);
    m.b = s.block<2, 2>(2, 2);
    m.c = s.block<2, 2>(0, 2);
  } else {
    m.a = s.block<2, 2>(2, 2);
    m.b = s.block<2, 2>(0, 0);
    m.c = s.block<2, 2>(2, 0);
  }
  m.det_total = s.determinant();
  m.nu        = symplectic_eigenvalues(state);
  return m;
}

Matrix2 adjugate(const Matrix2& m)
{
  Matrix2 adj;
  adj << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return adj;
}

double nonneg(double x, const char* what)
{
  if (x >= 0.0) return x;
  if (x >= -1e-9) return 0.0;
  throw NumericalError(fmt::format("{} is negative ({:.3e})", what, x));
}

// Entropy of a single mode with determinant `det_unit` in unit-vacuum units.
double entropy_from_unit_det(double det_unit)
{
  return entropy_term(0.5 * std::sqrt(std::max(det_unit, 1.0)));
}

DiscordResult assemble(const MeasuredBlocks& m, DiscordSide side, double min_det)
{
  const double value = entropy_from_unit_det(m.b.determinant()) - entropy_term(m.nu[0]) -
                       entropy_term(m.nu[1]) + entropy_from_unit_det(min_det);
  if (value < -1e-9) {
    throw NumericalError(fmt::format("discord evaluated negative ({:.3e})", value));
  }
  DiscordResult r;
  r.value               = std::max(value, 0.0);
  r.side                = side;
  r.min_conditional_det = min_det;
  return r;
}

}  // namespace

Matrix to_unit_vacuum(const Matrix& cm) { return 2.0 * cm; }
Matrix to_half_vacuum(const Matrix& cm) { return 0.5 * cm; }

double entropy_term(double d)
{
  const double excess = d - kVacuumVariance;
  if (excess <= 1e-12) {
    if (excess < -kPhysicalityTol) {
      throw UnphysicalStateError(fmt::format("symplectic eigenvalue {} below 1/2", d));
    }
    return 0.0;
  }
  const double up = d + 0.5;
  return up * std::log(up) - excess * std::log(excess);
}

double entropy(const GaussianState& state)
{
  double s = 0.0;
  for (double d : symplectic_eigenvalues(state)) s += entropy_term(d);
  return s;
}

EntropyReport mutual_information(const GaussianState& state)
{
  if (state.n_modes() != 2) {
    throw std::invalid_argument(
      fmt::format("mutual information needs 2 modes, got {}", state.n_modes()));
  }
  EntropyReport r;
  r.s1  = entropy(partial_trace(state, {0}));
  r.s2  = entropy(partial_trace(state, {1}));
  r.s12 = entropy(state);
  r.mutual_information = r.s1 + r.s2 - r.s12;
  if (r.mutual_information < 0.0 && r.mutual_information >= -1e-12) r.mutual_information = 0.0;
  return r;
}

EntropyReport mutual_information(const GaussianState& state, const GaussianState& input1,
                                 const GaussianState& input2)
{
  if (input1.n_modes() != 1 || input2.n_modes() != 1) {
    throw std::invalid_argument("input states must be single-mode");
  }
  EntropyReport r = mutual_information(state);
  r.delta_s1      = r.s1 - entropy(input1);
  r.delta_s2      = r.s2 - entropy(input2);
  return r;
}

DiscordResult gaussian_discord(const GaussianState& state, DiscordSide side)
{
  const MeasuredBlocks m = measured_blocks(state, side);

  const double i1 = m.a.determinant();
  const double i2 = m.b.determinant();
  const double i3 = m.c.determinant();
  const double i4 = m.det_total;

  // No measurement on B can disturb A when the cross block vanishes.
  if (m.c.cwiseAbs().maxCoeff() == 0.0) {
    DiscordResult r = assemble(m, side, i1);
    r.branch        = DiscordBranch::product;
    return r;
  }

  auto general = [&] {
    const double root = std::sqrt(nonneg(i3 * i3 + (i2 - 1.0) * (i4 - i1), "general-branch radicand"));
    return (2.0 * i3 * i3 + (i2 - 1.0) * (i4 - i1) + 2.0 * std::abs(i3) * root) /
           ((i2 - 1.0) * (i2 - 1.0));
  };
  auto homodyne = [&] {
    const double rad = i3 * i3 * i3 * i3 + (i4 - i1 * i2) * (i4 - i1 * i2) -
                       2.0 * i3 * i3 * (i1 * i2 + i4);
    return (i1 * i2 - i3 * i3 + i4 - std::sqrt(nonneg(rad, "homodyne-branch radicand"))) /
           (2.0 * i2);
  };

  const double lhs    = (i4 - i1 * i2) * (i4 - i1 * i2);
  const double rhs    = (1.0 + i2) * i3 * i3 * (i1 + i4);
  const double margin = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});

  double e_min         = 0.0;
  DiscordBranch branch = DiscordBranch::general;
  if (std::abs(i2 - 1.0) <= 1e-8) {
    // Near-pure measured mode: the general branch is 0/0.
    e_min  = homodyne();
    branch = DiscordBranch::homodyne;
  } else if (lhs < rhs - margin) {
    e_min = general();
  } else if (lhs > rhs + margin) {
    e_min  = homodyne();
    branch = DiscordBranch::homodyne;
  } else {
    const double g = general();
    const double h = homodyne();
    e_min  = std::min(g, h);
    branch = g <= h ? DiscordBranch::general : DiscordBranch::homodyne;
  }

  DiscordResult r = assemble(m, side, e_min);
  r.branch        = branch;
  return r;
}

double conditional_det(const Matrix2& a, const Matrix2& b, const Matrix2& c, double rho,
                       double phi)
{
  // (B + sigma_M)^{-1} = adj(P) / q with P = rho (B + sigma_M); this stays
  // finite at rho = 0, the homodyne limit.
  const double cs = std::cos(phi);
  const double sn = std::sin(phi);
  Matrix2 rot;
  rot << cs, -sn, sn, cs;
  const Matrix2 seed = rot * Eigen::Vector2d(1.0, rho * rho).asDiagonal() * rot.transpose();

  const Matrix2 p = rho * b + seed;
  const double q  = rho * (b.determinant() + 1.0) + (adjugate(b) * seed).trace();
  const Matrix2 conditional = a - c * adjugate(p) * c.transpose() / q;
  return conditional.determinant();
}

DiscordResult discord_oracle(const GaussianState& state, DiscordSide side,
                             const OracleOptions& options)
{
  if (options.grid < 2) throw std::invalid_argument("oracle grid needs at least 2 points");
  const MeasuredBlocks m = measured_blocks(state, side);
  const int g            = options.grid;
  const double pi        = std::numbers::pi;

  // rho runs from 1 (heterodyne, s = 1) down to 0 (homodyne); phi over [0, pi).
  auto rho_at = [g](int i) { return 1.0 - static_cast<double>(i) / (g - 1); };
  auto phi_at = [g, pi](int j) { return pi * j / g; };

  std::vector<double> dets(static_cast<std::size_t>(g) * g);
  const bool parallel = options.execution == Execution::parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (int idx = 0; idx < g * g; ++idx) {
    const int i = idx / g;
    const int j = idx % g;
    dets[idx]   = conditional_det(m.a, m.b, m.c, rho_at(i), phi_at(j));
  }

  // Fixed enumeration order; strict '<' keeps the smaller s, then smaller phi.
  int best = 0;
  for (int idx = 1; idx < g * g; ++idx) {
    if (dets[idx] < dets[best]) best = idx;
  }

  double rho  = rho_at(best / g);
  double phi  = phi_at(best % g);
  double fval = dets[best];
  double h_rho = 1.0 / (g - 1);
  double h_phi = pi / g;

  auto eval = [&](double r, double p) { return conditional_det(m.a, m.b, m.c, r, p); };
  auto wrap = [pi](double p) {
    p = std::fmod(p, pi);
    return p < 0.0 ? p + pi : p;
  };

  int iter = 0;
  for (; iter < options.max_refinement; ++iter) {
    if (h_rho < options.step_tol && h_phi < options.step_tol) break;
    bool moved = false;
    const double candidates[4][2] = {
      {std::min(1.0, rho + h_rho), phi},
      {std::max(0.0, rho - h_rho), phi},
      {rho, wrap(phi + h_phi)},
      {rho, wrap(phi - h_phi)},
    };
    for (const auto& cand : candidates) {
      const double v = eval(cand[0], cand[1]);
      if (v < fval) {
        fval  = v;
        rho   = cand[0];
        phi   = cand[1];
        moved = true;
        break;
      }
    }
    if (!moved) {
      h_rho *= 0.5;
      h_phi *= 0.5;
    }
  }

  DiscordResult r = assemble(m, side, fval);
  r.branch        = DiscordBranch::search;
  r.minimizer     = MeasurementParams{
    rho > 0.0 ? 1.0 / rho : std::numeric_limits<double>::infinity(), phi};
  r.converged = h_rho < options.step_tol && h_phi < options.step_tol;
  return r;
}

}  // namespace cvlab
