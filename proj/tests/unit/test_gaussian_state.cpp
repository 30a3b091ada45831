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


#include <cmath>
#include <random>

#include <doctest.h>

#include "cvlab/gaussian_state.hpp"
#include "cvlab/optics.hpp"

using namespace cvlab;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix diag(std::initializer_list<double> v)
{
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

// Hand-written balanced splitter, (x1, p1, x2, p2) ordering.
Matrix balanced_bs()
{
  const double r = 1.0 / std::sqrt(2.0);
  Matrix s(4, 4);
  s << r, 0, r, 0,
       0, r, 0, r,
      -r, 0, r, 0,
       0, -r, 0, r;
  return s;
}

}  // namespace

TEST_CASE("single-mode covariance matrices")
{
  CHECK(max_abs(single_mode_cm({0.0, 0.7}) - diag({0.5, 0.5})) < 1e-15);
  CHECK(max_abs(single_mode_cm({1.0, 0.0}) - diag({1.5, 1.5})) < 1e-15);

  const Matrix2 sq = single_mode_cm({1.0, 1.0});
  CHECK(sq(0, 0) == doctest::Approx(1.5 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sq(1, 1) == doctest::Approx(1.5 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sq.determinant() == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(single_mode_cm({-0.1, 0.0}), std::domain_error);
  CHECK_THROWS_AS(single_mode_cm({1.0, 1.5}), std::domain_error);
}

TEST_CASE("purity identity holds over random parameters")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> n(0.0, 20.0), b(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const SingleModeSpec spec{n(rng), b(rng)};
    const double want = std::pow(0.5 + (1.0 - spec.beta) * spec.n_tot, 2);
    CHECK(std::abs(single_mode_cm(spec).determinant() - want) <= 1e-10 * std::max(1.0, want));
  }
}

TEST_CASE("spec_from_cm inverts single_mode_cm")
{
  for (const SingleModeSpec spec : {SingleModeSpec{2.0, 0.3}, SingleModeSpec{0.5, 1.0},
                                    SingleModeSpec{4.0, 0.0}}) {
    const auto back = spec_from_cm(single_mode_cm(spec));
    CHECK(back.n_tot == doctest::Approx(spec.n_tot).epsilon(1e-12));
    CHECK(back.beta == doctest::Approx(spec.beta).epsilon(1e-10));
  }
}

TEST_CASE("tensor and partial trace")
{
  const auto vac2 = tensor({GaussianState::vacuum(), GaussianState::vacuum()});
  CHECK(max_abs(vac2.cm() - diag({0.5, 0.5, 0.5, 0.5})) == 0.0);

  const auto s = GaussianState::thermal(1.0);
  const auto ss = tensor({s, s});
  CHECK(max_abs(ss.cm() - diag({1.5, 1.5, 1.5, 1.5})) == 0.0);

  const auto a  = GaussianState::single_mode({2.0, 0.4});
  const auto b  = GaussianState::single_mode({0.3, 0.9});
  const auto ab = tensor({a, b});
  CHECK(partial_trace(ab, {0}).cm() == a.cm());
  CHECK(partial_trace(ab, {1}).cm() == b.cm());
  CHECK(partial_trace(ab, {0, 1}).cm() == ab.cm());

  // Split thermal through an explicit 4x4 congruence, then the submatrix.
  const Matrix in    = diag({2.5, 2.5, 0.5, 0.5});
  const Matrix out   = balanced_bs() * in * balanced_bs().transpose();
  const auto split   = apply_symplectic(GaussianState(in), SymplecticOp(balanced_bs()));
  CHECK(max_abs(split.cm() - out) < 1e-14);
  CHECK(max_abs(partial_trace(split, {1}).cm() - diag({1.5, 1.5})) < 1e-14);

  CHECK_THROWS(partial_trace(ab, {0, 0}));
  CHECK_THROWS(partial_trace(ab, {2}));
}

TEST_CASE("symplectic eigenvalues")
{
  const auto vac = symplectic_eigenvalues(GaussianState::vacuum());
  REQUIRE(vac.size() == 1);
  CHECK(vac[0] == doctest::Approx(0.5).epsilon(1e-14));
  const auto th = symplectic_eigenvalues(GaussianState::thermal(1.0));
  REQUIRE(th.size() == 1);
  CHECK(th[0] == doctest::Approx(1.5).epsilon(1e-14));
  const auto sq = symplectic_eigenvalues(GaussianState::single_mode({1.0, 1.0}));
  CHECK(sq[0] == doctest::Approx(0.5).epsilon(1e-12));

  // Single mode: sqrt(det).
  const Matrix2 m = single_mode_cm({3.0, 0.6});
  CHECK(symplectic_eigenvalues(Matrix(m))[0] == doctest::Approx(std::sqrt(m.determinant())));
}

TEST_CASE("congruence preserves spectrum and determinant")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto st = tensor({GaussianState::single_mode({5.0 * u(rng), u(rng)}),
                            GaussianState::single_mode({5.0 * u(rng), u(rng)})});
    const auto op  = beam_splitter(2, {u(rng), 0, 1});
    const auto out = apply_symplectic(st, op);
    const auto d0  = symplectic_eigenvalues(st);
    const auto d1  = symplectic_eigenvalues(out);
    for (std::size_t k = 0; k < d0.size(); ++k) CHECK(std::abs(d0[k] - d1[k]) < 1e-9);
    CHECK(std::abs(st.cm().determinant() - out.cm().determinant()) <
          1e-10 * std::max(1.0, st.cm().determinant()));
    CHECK(is_physical(out.cm()));
  }
}

TEST_CASE("apply_symplectic examples")
{
  const auto st = tensor({GaussianState::single_mode({1.0, 0.3}), GaussianState::thermal(2.0)});
  CHECK(apply_symplectic(st, SymplecticOp::identity(2)).cm() == st.cm());

  const auto s   = GaussianState::thermal(1.0);
  const auto ss  = tensor({s, s});
  CHECK(max_abs(apply_symplectic(ss, SymplecticOp(balanced_bs())).cm() - ss.cm()) < 1e-14);

  const auto vt  = tensor({GaussianState::vacuum(), GaussianState::thermal(1.0)});
  const auto out = apply_symplectic(vt, SymplecticOp(balanced_bs()));
  CHECK(max_abs(out.block(0, 0) - Matrix2::Identity()) < 1e-14);
  CHECK(max_abs(out.block(1, 1) - Matrix2::Identity()) < 1e-14);
  CHECK(max_abs(out.block(0, 1).cwiseAbs() - 0.5 * Matrix2::Identity()) < 1e-14);
}

TEST_CASE("physicality checks")
{
  CHECK(is_physical(GaussianState::vacuum(2).cm()));
  // Symplectic eigenvalue 0.49 < 1/2 - 1e-6.
  CHECK_FALSE(is_physical(diag({0.49, 0.49})));
  CHECK_THROWS_AS(GaussianState(diag({0.49, 0.49})), UnphysicalStateError);
  CHECK_THROWS_AS(GaussianState(diag({0.2, 1.0})), UnphysicalStateError);
  Matrix asym = diag({1.0, 1.0});
  asym(0, 1) = 0.3;
  CHECK_THROWS(GaussianState(asym));

  Matrix not_symplectic = Matrix::Identity(2, 2) * 2.0;
  CHECK_THROWS(SymplecticOp(not_symplectic));
}
