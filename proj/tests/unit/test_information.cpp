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
#include <limits>
#include <random>

#include <doctest.h>

#include "cvlab/harness.hpp"
#include "cvlab/information.hpp"
#include "cvlab/optics.hpp"

using namespace cvlab;

namespace {

double g(double n) { return n > 0.0 ? (n + 1.0) * std::log(n + 1.0) - n * std::log(n) : 0.0; }

// Brute-force value for thermal N_s = 2 split at t = 1/2, measured on B
// (independent dense minimization over the measurement seed).
constexpr double kSplitThermalDiscord = 0.43152310867767274;

}  // namespace

TEST_CASE("entropy of single-mode states")
{
  CHECK(entropy(GaussianState::vacuum()) == 0.0);
  CHECK(entropy(GaussianState::thermal(1.0)) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(entropy(GaussianState::single_mode({3.0, 1.0})) == doctest::Approx(0.0).epsilon(1e-9));
  for (double n : {0.1, 1.0, 10.0}) {
    CHECK(std::abs(entropy(GaussianState::thermal(n)) - g(n)) <= 1e-12);
  }
  CHECK(entropy_term(0.5) == 0.0);
  CHECK(entropy_term(0.5 + 5e-13) == 0.0);
}

TEST_CASE("entropy additivity and invariance")
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto a = GaussianState::single_mode({4.0 * u(rng), u(rng)});
    const auto b = GaussianState::single_mode({4.0 * u(rng), u(rng)});
    const auto ab = tensor({a, b});
    CHECK(std::abs(entropy(ab) - entropy(a) - entropy(b)) <= 1e-12);
    const auto mixed = apply_symplectic(ab, beam_splitter(2, {u(rng), 0, 1}));
    CHECK(std::abs(entropy(mixed) - entropy(ab)) <= 1e-10);
  }
}

TEST_CASE("mutual information")
{
  const auto prod = tensor({GaussianState::thermal(1.0), GaussianState::thermal(3.0)});
  CHECK(std::abs(mutual_information(prod).mutual_information) <= 1e-12);

  // Splitting is unitary: S12 = g(2), marginals thermal(1).
  const auto split = prepare_discordant_pair(SingleModeSpec::thermal(2.0), 0.5);
  const auto rep   = mutual_information(split);
  CHECK(rep.s1 == doctest::Approx(g(1.0)).epsilon(1e-13));
  CHECK(rep.s2 == doctest::Approx(g(1.0)).epsilon(1e-13));
  CHECK(rep.s12 == doctest::Approx(g(2.0)).epsilon(1e-13));
  CHECK(std::abs(rep.mutual_information - (6.0 * std::log(2.0) - 3.0 * std::log(3.0))) <= 1e-12);
  CHECK(std::abs(rep.mutual_information - (rep.s1 + rep.s2 - rep.s12)) <= 1e-12);

  const auto with_delta =
    mutual_information(split, GaussianState::thermal(2.0), GaussianState::vacuum());
  REQUIRE(with_delta.delta_s1.has_value());
  CHECK(*with_delta.delta_s1 == doctest::Approx(g(1.0) - g(2.0)));
  CHECK(*with_delta.delta_s2 == doctest::Approx(g(1.0)));
}

TEST_CASE("mutual information between beams 1 and 3 after mixing is positive")
{
  for (double tau : {0.0, 0.15, 0.5, 0.85, 0.99}) {
    const auto run = run_three_mode(ThreeModeProtocol::matched(SingleModeSpec::thermal(2.0), 0.5, tau));
    CHECK(mutual_information(partial_trace(run.output, {0, 2})).mutual_information > 0.0);
  }
}

TEST_CASE("discord of product states vanishes")
{
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto st = tensor({GaussianState::single_mode({5.0 * u(rng), u(rng)}),
                            GaussianState::single_mode({5.0 * u(rng), u(rng)})});
    for (auto side : {DiscordSide::A, DiscordSide::B}) {
      const auto d = gaussian_discord(st, side);
      CHECK(std::abs(d.value) <= 1e-9);
      CHECK(d.branch == DiscordBranch::product);
      CHECK(std::abs(discord_oracle(st, side, {16, 2000}).value) <= 1e-9);
    }
  }
  CHECK(gaussian_discord(prepare_discordant_pair(SingleModeSpec::thermal(2.0), 1.0), DiscordSide::B)
          .value == 0.0);
  CHECK(gaussian_discord(prepare_discordant_pair(SingleModeSpec::vacuum(), 0.4), DiscordSide::B)
          .value == 0.0);
}

TEST_CASE("split-thermal discord")
{
  const auto split = prepare_discordant_pair(SingleModeSpec::thermal(2.0), 0.5);
  const auto b     = gaussian_discord(split, DiscordSide::B);
  const auto a     = gaussian_discord(split, DiscordSide::A);
  CHECK(std::abs(b.value - kSplitThermalDiscord) <= 1e-9);
  CHECK(std::abs(a.value - b.value) <= 1e-9);

  const auto o = discord_oracle(split, DiscordSide::B);
  CHECK(std::abs(o.value - b.value) <= 1e-6);
  REQUIRE(o.minimizer.has_value());
  CHECK(o.minimizer->squeezing == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("discord decreases to zero as the split becomes trivial")
{
  auto discord = [](double t, DiscordSide side) {
    return gaussian_discord(prepare_discordant_pair(SingleModeSpec::thermal(2.0), t), side).value;
  };
  // Measuring the transmitted mode: monotone on the whole grid.
  double last = std::numeric_limits<double>::infinity();
  for (double t : {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) {
    const double d = discord(t, DiscordSide::A);
    CHECK(d < last);
    CHECK(d > 0.0);
    last = d;
  }
  // Measuring the reflected mode peaks near t = 0.6 before falling off.
  CHECK(discord(0.6, DiscordSide::B) > discord(0.5, DiscordSide::B));
  CHECK(discord(0.99, DiscordSide::B) < discord(0.9, DiscordSide::B));
  for (auto side : {DiscordSide::A, DiscordSide::B}) {
    CHECK(discord(0.9999, side) < 2e-3);
    CHECK(discord(1.0, side) == 0.0);
  }
}

TEST_CASE("closed form matches the measurement search on random states")
{
  std::mt19937_64 rng(23);
  int general = 0, homodyne = 0;
  for (int i = 0; i < 20; ++i) {
    const auto st = random_two_mode_state(rng);
    for (auto side : {DiscordSide::A, DiscordSide::B}) {
      const auto cf = gaussian_discord(st, side);
      const auto br = discord_oracle(st, side);
      CHECK(std::abs(cf.value - br.value) <= 1e-6);
      CHECK(cf.value >= 0.0);
      general += cf.branch == DiscordBranch::general;
      homodyne += cf.branch == DiscordBranch::homodyne;
    }
  }
  CHECK(general > 0);
  CHECK(homodyne > 0);
}

TEST_CASE("oracle is deterministic across execution modes")
{
  std::mt19937_64 rng(29);
  const auto st = random_two_mode_state(rng);
  OracleOptions serial;
  serial.execution = Execution::serial;
  const auto s = discord_oracle(st, DiscordSide::B, serial);
  const auto p = discord_oracle(st, DiscordSide::B);
  CHECK(s.value == p.value);
  CHECK(s.minimizer->squeezing == p.minimizer->squeezing);
  CHECK(s.minimizer->angle == p.minimizer->angle);
}

TEST_CASE("conditional determinant of a product state is det A")
{
  const Matrix2 a = 2.0 * single_mode_cm({1.3, 0.4});
  const Matrix2 b = 2.0 * single_mode_cm({0.7, 0.2});
  for (double rho : {0.0, 0.3, 1.0}) {
    CHECK(conditional_det(a, b, Matrix2::Zero(), rho, 0.7) == doctest::Approx(a.determinant()));
  }
}
