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


// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cvlab/harness.hpp"
#include "cvlab/information.hpp"
#include "cvlab/optics.hpp"
#include "cvlab/parallel.hpp"
#include "cvlab/statistics.hpp"

using namespace cvlab;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what)
  {
    if (ok) return;
    passed = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double g(double n) { return (n + 1.0) * std::log(n + 1.0) - n * std::log(n); }

const std::pair<int, int> kPairs[] = {{0, 1}, {0, 2}, {1, 2}};

Outcome identity_interference()
{
  Outcome o;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double phi = 3.141592653589793 * u(rng);
    const Matrix2 r  = Eigen::Rotation2Dd(phi).toRotationMatrix();
    const Matrix2 s  = r * single_mode_cm({10.0 * u(rng), u(rng)}) * r.transpose();
    for (double tau : {0.15, 0.5, 0.85}) {
      const auto b = mix_two(s, s, tau);
      worst = std::max({worst, max_abs(b.sigma12), max_abs(b.sigma1 - s), max_abs(b.sigma2 - s)});
    }
  }
  o.require(worst <= 1e-12, fmt::format("max deviation {:.3e}", worst));
  if (o.passed) o.detail = fmt::format("max deviation {:.3e} over 600 cases", worst);
  return o;
}

Outcome three_mode_structure()
{
  Outcome o;
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = 0.02 + 0.96 * u(rng), tau = u(rng);
    const SingleModeSpec src{10.0 * u(rng), 0.0};
    const auto run = run_three_mode(ThreeModeProtocol::matched(src, t, tau));
    // delta23 built independently: split of the source against vacuum.
    const Matrix2 d23 = prepare_discordant_pair(src, t).block(0, 1);
    worst = std::max({worst, max_abs(run.output.block(0, 2) - std::sqrt(1.0 - tau) * d23),
                      max_abs(run.output.block(1, 2) - std::sqrt(tau) * d23),
                      max_abs(run.output.block(0, 1))});
  }
  o.require(worst <= 1e-12, fmt::format("max deviation {:.3e}", worst));
  if (o.passed) o.detail = fmt::format("max deviation {:.3e} over 100 protocols", worst);
  return o;
}

Outcome discord_correctness()
{
  Outcome o;
  std::mt19937_64 rng(103);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto st = random_two_mode_state(rng);
    for (auto side : {DiscordSide::A, DiscordSide::B}) {
      worst = std::max(worst, std::abs(gaussian_discord(st, side).value -
                                       discord_oracle(st, side).value));
    }
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_product = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto st = tensor({GaussianState::single_mode({5.0 * u(rng), u(rng)}),
                            GaussianState::single_mode({5.0 * u(rng), u(rng)})});
    for (auto side : {DiscordSide::A, DiscordSide::B}) {
      worst_product = std::max({worst_product, std::abs(gaussian_discord(st, side).value),
                                std::abs(discord_oracle(st, side).value)});
    }
  }
  o.require(worst <= 1e-6, fmt::format("closed form vs oracle {:.3e}", worst));
  o.require(worst_product <= 1e-9, fmt::format("product-state discord {:.3e}", worst_product));
  if (o.passed) {
    o.detail = fmt::format("closed form vs oracle {:.3e}, product states {:.3e}", worst,
                           worst_product);
  }
  return o;
}

Outcome entropic_identities()
{
  Outcome o;
  for (double n : {0.1, 1.0, 10.0}) {
    const double s = entropy(GaussianState::thermal(n));
    o.require(std::abs(s - g(n)) <= 1e-12, fmt::format("S(thermal {}) = {} vs g = {}", n, s, g(n)));
  }
  const double mi =
    mutual_information(prepare_discordant_pair(SingleModeSpec::thermal(2.0), 0.5)).mutual_information;
  o.require(std::abs(mi - 2.0 * std::log(2.0)) <= 1e-9,
            fmt::format("split-thermal I = {:.12f}, target 2 ln 2 = {:.12f}", mi, 2.0 * std::log(2.0)));
  if (o.passed) o.detail = fmt::format("I = {:.12f}", mi);
  return o;
}

Outcome table1_reproduction()
{
  Outcome o;
  const RunConfig config;  // ideal bench: M = 100, 10^5 frames, seed 42
  const auto rows = run_tables(config);
  const double c12 = rows[0].in.c, c13 = rows[1].in.c, c23 = rows[2].in.c;
  o.require(std::abs(c12) <= 0.02, fmt::format("c12_in = {:.4f}", c12));
  o.require(std::abs(c13) <= 0.02, fmt::format("c13_in = {:.4f}", c13));
  o.require(c23 >= 0.99, fmt::format("c23_in = {:.4f}", c23));
  const double ideal_out[] = {0.0, 0.5, 0.5};
  for (int i = 0; i < 3; ++i) {
    o.require(std::abs(rows[i].out.c - ideal_out[i]) <= 0.02,
              fmt::format("c{}{}_out = {:.4f}", rows[i].h, rows[i].k, rows[i].out.c));
  }
  const auto ci = confidence_interval(0.5, 50, 0.99);
  for (double measured : {0.55, 0.62}) {
    o.require(ci.ci_low <= measured && measured <= ci.ci_high,
              fmt::format("{} outside [{:.3f}, {:.3f}]", measured, ci.ci_low, ci.ci_high));
  }
  if (o.passed) {
    o.detail = fmt::format("in ({:.4f}, {:.4f}, {:.4f}) out ({:.4f}, {:.4f}, {:.4f}); n=50 CI [{:.3f}, {:.3f}]",
                           c12, c13, c23, rows[0].out.c, rows[1].out.c, rows[2].out.c, ci.ci_low,
                           ci.ci_high);
  }
  return o;
}

Outcome table2_reproduction()
{
  Outcome o;
  RunConfig config;
  std::vector<std::string> warnings;

  config.basis     = speckle::Basis::deg45;
  const auto deg45 = run_erasure(config, &warnings);
  const double ideal[] = {0.0, 0.5, 0.5};
  for (int i = 0; i < 3; ++i) {
    o.require(std::abs(deg45[i].estimate.c - ideal[i]) <= 0.02,
              fmt::format("@45 c{}{} = {:.4f}", deg45[i].h, deg45[i].k, deg45[i].estimate.c));
  }
  const double measured[] = {0.10, 0.54, 0.53};
  for (int i = 0; i < 3; ++i) {
    o.require(std::abs(measured[i] - ideal[i]) <= 0.06,
              fmt::format("measured @45 c{}{} = {:.2f} is {:.2f} from ideal {:.1f}", deg45[i].h,
                          deg45[i].k, measured[i], std::abs(measured[i] - ideal[i]), ideal[i]));
  }

  config.basis    = speckle::Basis::none;
  const auto none = run_erasure(config, &warnings);
  o.require(none[1].stage == "out" && none[1].estimate.c >= 0.99,
            fmt::format("basis=none c12_out = {:.4f}", none[1].estimate.c));

  config.basis = speckle::Basis::V;
  warnings.clear();
  run_erasure(config, &warnings);
  bool flagged = false;
  for (const auto& w : warnings) flagged = flagged || w.find("basis=V") != std::string::npos;
  o.require(flagged, "basis=V rows not flagged");

  if (o.passed) {
    o.detail = fmt::format("@45 ({:.4f}, {:.4f}, {:.4f}), none c12 {:.4f}", deg45[0].estimate.c,
                           deg45[1].estimate.c, deg45[2].estimate.c, none[1].estimate.c);
  }
  return o;
}

Outcome sweep_behaviour()
{
  Outcome o;
  const RunConfig config;
  const auto rows  = run_sweep(config);
  const int points = config.sweep.points;
  const auto& taus = config.sweep.taus;
  o.require(points == 50 && rows.size() == taus.size() * 50, "grid is not 50 points per tau");
  for (std::size_t s = 0; s < taus.size(); ++s) {
    for (int i = 1; i < points; ++i) {
      const auto& a = rows[s * points + i - 1];
      const auto& b = rows[s * points + i];
      if (!(b.discord > a.discord && b.c13_out > a.c13_out && b.c23_out > a.c23_out)) {
        o.require(false, fmt::format("tau {} not strictly monotone at point {}", taus[s], i));
        break;
      }
    }
    if (s == 0) continue;
    // Larger tau keeps more 2-3 correlation at the expense of 1-3.
    for (int i = 0; i < points; ++i) {
      const auto& lo = rows[(s - 1) * points + i];
      const auto& hi = rows[s * points + i];
      if (taus[s] > taus[s - 1] && !(hi.c23_out > lo.c23_out && hi.c13_out < lo.c13_out)) {
        o.require(false, fmt::format("tau ordering broken between {} and {}", taus[s - 1], taus[s]));
        break;
      }
    }
  }
  if (o.passed) o.detail = fmt::format("{} series x {} points", taus.size(), points);
  return o;
}

Outcome mc_vs_cm()
{
  Outcome o;
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    speckle::BenchConfig bench;
    bench.frames       = 40000;
    bench.modes        = 20 + static_cast<int>(80 * u(rng));
    bench.tau_mix      = 0.05 + 0.9 * u(rng);
    bench.t_split      = 0.1 + 0.8 * u(rng);
    bench.mean_photons = 0.2 + 3.0 * u(rng);
    bench.seed         = 5000 + i;
    const auto batch   = speckle::run_bench(bench);
    const auto run     = run_three_mode(ThreeModeProtocol::matched(
      SingleModeSpec::thermal(bench.mean_photons / bench.t_split), bench.t_split, bench.tau_mix));
    for (auto [h, k] : kPairs) {
      for (const auto* series : {&batch.in, &batch.out}) {
        const auto& state = series == &batch.in ? run.input : run.output;
        const double mc   = corr_coeff((*series)[h], (*series)[k]);
        const double se   = corr_standard_error((*series)[h], (*series)[k]);
        const double cm   = cm_to_intensity_corr(state, h, k);
        // Exactly determined pairs have zero spread.
        const double z = std::abs(mc - cm) / std::max(se, 1e-12);
        if (std::abs(mc - cm) > 1e-9) worst = std::max(worst, z);
        o.require(std::abs(mc - cm) <= 3.0 * se + 1e-9,
                  fmt::format("config {} pair {}-{}: MC {:.4f} vs CM {:.4f}, SE {:.4f}", i, h + 1,
                              k + 1, mc, cm, se));
      }
    }
  }
  if (o.passed) o.detail = fmt::format("largest deviation {:.2f} SE over 60 comparisons", worst);
  return o;
}

Outcome determinism()
{
  Outcome o;
  const RunConfig config;
  std::string first;
  for (int w : {1, 2, 8}) {
    ScopedWorkers workers(w);
    const std::string csv = tables_csv(run_tables(config));
    if (w == 1) first = csv;
    o.require(csv == first, fmt::format("{} workers differ from 1 worker", w));
  }
  if (o.passed) o.detail = "identical CSV for 1, 2, 8 workers";
  return o;
}

Outcome ci_calibration()
{
  Outcome o;
  std::mt19937_64 rng(110);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> h(50), k(50);
  std::string summary;
  for (double rho : {0.0, 0.5, 0.9}) {
    int covered = 0;
    for (int run = 0; run < 1000; ++run) {
      for (int i = 0; i < 50; ++i) {
        h[i] = normal(rng);
        k[i] = rho * h[i] + std::sqrt(1.0 - rho * rho) * normal(rng);
      }
      const auto e = estimate_correlation(h, k, 0.99);
      covered += e.ci_low <= rho && rho <= e.ci_high;
    }
    o.require(covered >= 970, fmt::format("rho {}: coverage {:.1f}%", rho, covered / 10.0));
    summary += fmt::format("{}rho {}: {:.1f}%", summary.empty() ? "" : ", ", rho, covered / 10.0);
  }
  if (o.passed) o.detail = summary;
  return o;
}

struct Criterion {
  const char* id;
  const char* name;
  double budget_s;  // 0 = no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main()
{
  const std::vector<Criterion> criteria = {
    {"AC1", "identity interference leaves sigma unchanged", 1.0, identity_interference},
    {"AC2", "three-mode output block structure", 1.0, three_mode_structure},
    {"AC3", "closed-form discord matches the oracle", 30.0, discord_correctness},
    {"AC4", "entropic identities", 0.0, entropic_identities},
    {"AC5", "interference bench table", 60.0, table1_reproduction},
    {"AC6", "polarization erasure table", 0.0, table2_reproduction},
    {"AC7", "discord sweep monotonicity and tau ordering", 30.0, sweep_behaviour},
    {"AC8", "Monte Carlo vs CM-level correlations", 0.0, mc_vs_cm},
    {"AC9", "tables output independent of worker count", 0.0, determinism},
    {"AC10", "99% interval coverage at n = 50", 0.0, ci_calibration},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = fmt::format("exception: {}", e.what());
    }
    const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0) o.require(s < c.budget_s, fmt::format("took {:.2f} s, limit {} s", s, c.budget_s));
    failed += !o.passed;
    std::cout << fmt::format("[{}] {} {}: {} ({:.2f} s)\n", o.passed ? "PASS" : "FAIL", c.id,
                             c.name, o.detail, s)
              << std::flush;
  }
  std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
