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

#include "cvlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "cvlab/information.hpp"
#include "cvlab/optics.hpp"
#include "cvlab/parallel.hpp"

namespace cvlab {

namespace {

constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

std::string fixed6(double x)
{
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.6f}", x);
}

CorrelationEstimate undefined_estimate(std::size_t n, double level)
{
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, n, nan, nan, level};
}

Matrix local_pair(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> squeeze(0.0, 0.7);
  auto single = [&] {
    auto rot = [](double t) {
      Matrix2 r;
      r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      return r;
    };
    const double r = squeeze(rng);
    Matrix2 sq     = Matrix2::Zero();
    sq(0, 0)       = std::exp(r);
    sq(1, 1)       = std::exp(-r);
    const double a = angle(rng);
    const double b = angle(rng);
    return Matrix2(rot(a) * sq * rot(b));
  };
  Matrix s            = Matrix::Zero(4, 4);
  s.block<2, 2>(0, 0) = single();
  s.block<2, 2>(2, 2) = single();
  return s;
}

}  // namespace

// ---- tables -----------------------------------------------------------------

std::vector<PairRow> run_tables(const RunConfig& config)
{
  config.validate();
  speckle::BenchConfig bench = config.bench;
  bench.scenario             = speckle::Scenario::interference;
  bench.analysis_basis       = speckle::Basis::none;
  const speckle::FrameBatch batch = speckle::run_bench(bench);

  std::vector<PairRow> rows;
  for (auto [h, k] : kPairs) {
    PairRow row;
    row.h   = h + 1;
    row.k   = k + 1;
    row.in  = estimate_correlation(batch.in[h], batch.in[k], config.ci_level);
    row.out = estimate_correlation(batch.out[h], batch.out[k], config.ci_level);
    rows.push_back(row);
  }
  return rows;
}

std::string tables_csv(const std::vector<PairRow>& rows)
{
  std::string csv = "pair,c_in,ci_in_lo,ci_in_hi,c_out,ci_out_lo,ci_out_hi\n";
  for (const auto& r : rows) {
    csv += fmt::format("{}-{},{},{},{},{},{},{}\n", r.h, r.k, fixed6(r.in.c), fixed6(r.in.ci_low),
                       fixed6(r.in.ci_high), fixed6(r.out.c), fixed6(r.out.ci_low),
                       fixed6(r.out.ci_high));
  }
  return csv;
}

// ---- erasure ----------------------------------------------------------------

std::vector<ErasureRow> run_erasure(const RunConfig& config, std::vector<std::string>* warnings)
{
  config.validate();
  using speckle::Basis;
  const std::vector<Basis> bases =
    config.basis ? std::vector<Basis>{*config.basis}
                 : std::vector<Basis>{Basis::none, Basis::deg45, Basis::V};

  std::vector<ErasureRow> rows;
  for (Basis basis : bases) {
    speckle::BenchConfig bench = config.bench;
    bench.scenario             = speckle::Scenario::erasure;
    bench.analysis_basis       = basis;
    const speckle::FrameBatch batch = speckle::run_bench(bench);
    const std::size_t n             = batch.size();

    auto add = [&](const char* stage, const std::array<std::vector<double>, 3>& series, int h,
                   int k) {
      ErasureRow row{basis, stage, h + 1, k + 1, {}, true};
      try {
        row.estimate = estimate_correlation(series[h], series[k], config.ci_level);
      } catch (const UndefinedCorrelationError&) {
        row.estimate = undefined_estimate(n, config.ci_level);
        row.defined  = false;
      }
      rows.push_back(row);
    };

    if (basis == Basis::none) {
      // Without polarizers only the 1-2 pair is reported.
      add("in", batch.in, 0, 1);
      add("out", batch.out, 0, 1);
      continue;
    }
    for (auto [h, k] : kPairs) add("out", batch.out, h, k);

    if (warnings && basis == Basis::V) {
      warnings->push_back(
        "basis=V rows are model-defined: projecting all three beams on V leaves them fully "
        "correlated, and a near-zero c13 next to near-unit c12 and c23 cannot come from one "
        "fixed projection of three intensity series");
    }
    if (warnings && basis == Basis::H) {
      warnings->push_back("basis=H leaves beam 3 dark; pairs with beam 3 are undefined");
    }
  }
  return rows;
}

std::string erasure_csv(const std::vector<ErasureRow>& rows)
{
  std::string csv = "basis,stage,pair,c,ci_lo,ci_hi\n";
  for (const auto& r : rows) {
    csv += fmt::format("{},{},{}-{},{},{},{}\n", speckle::to_string(r.basis), r.stage, r.h, r.k,
                       fixed6(r.estimate.c), fixed6(r.estimate.ci_low),
                       fixed6(r.estimate.ci_high));
  }
  return csv;
}

// ---- sweep ------------------------------------------------------------------

std::vector<SweepRow> run_sweep(const RunConfig& config)
{
  config.validate();
  const SweepConfig& sw = config.sweep;
  std::vector<SweepRow> rows;
  for (double tau : sw.taus) {
    const double t_split = sw.vary == SweepAxis::t_split ? tau : config.bench.t_split;
    const double tau_mix = sw.vary == SweepAxis::tau_mix ? tau : config.bench.tau_mix;
    for (int i = 0; i < sw.points; ++i) {
      const double frac = static_cast<double>(i) / (sw.points - 1);
      const double n_s  = sw.n_min * std::pow(sw.n_max / sw.n_min, frac);
      const SingleModeSpec source = SingleModeSpec::thermal(n_s);

      const GaussianState pair = prepare_discordant_pair(source, t_split);
      const ThreeModeRun run =
        run_three_mode(ThreeModeProtocol::matched(source, t_split, tau_mix));

      SweepRow row;
      row.tau      = tau;
      row.n_source = n_s;
      row.discord  = gaussian_discord(pair, config.discord_side).value;
      row.c13_out  = cm_to_intensity_corr(run.output, 0, 2, sw.shot_noise);
      row.c23_out  = cm_to_intensity_corr(run.output, 1, 2, sw.shot_noise);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
  std::string csv = "tau,n_source,discord,c13_out,c23_out\n";
  for (const auto& r : rows) {
    csv += fmt::format("{},{},{},{},{}\n", fixed6(r.tau), fixed6(r.n_source), fixed6(r.discord),
                       fixed6(r.c13_out), fixed6(r.c23_out));
  }
  return csv;
}

// ---- validate ---------------------------------------------------------------

GaussianState random_two_mode_state(std::mt19937_64& rng)
{
  std::exponential_distribution<double> excess(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double d1 = 0.5 + excess(rng);
  const double d2 = 0.5 + excess(rng);
  Matrix williamson = Matrix::Zero(4, 4);
  williamson.diagonal() << d1, d1, d2, d2;

  const Matrix s = local_pair(rng) * beam_splitter(2, {unit(rng), 0, 1}).matrix() * local_pair(rng);
  return GaussianState(s * williamson * s.transpose());
}

std::vector<CheckResult> run_validation(const ValidationOptions& options)
{
  std::vector<CheckResult> results;
  std::mt19937_64 rng(options.config.bench.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_spec = [&] { return SingleModeSpec{5.0 * unit(rng), unit(rng)}; };

  auto record = [&](std::string name, auto&& body) {
    CheckResult r{std::move(name), false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
      if (r.passed) r.detail = "ok";
    } catch (const std::exception& e) {
      r.detail = fmt::format("exception: {}", e.what());
    }
    results.push_back(std::move(r));
  };

  record("physicality of constructed states", [&]() -> std::string {
    std::vector<Matrix> cms;
    for (int i = 0; i < 50; ++i) {
      cms.push_back(single_mode_cm(random_spec()));
      const auto run = run_three_mode(ThreeModeProtocol::matched(random_spec(), 0.05 + 0.9 * unit(rng), unit(rng)));
      cms.push_back(run.output.cm());
      const auto pol = polarization_filtered_cms(random_spec(), random_spec());
      cms.push_back(pol.horizontal.cm());
      cms.push_back(pol.vertical.cm());
    }
    if (options.inject_corrupt) cms.push_back(Matrix(Eigen::Vector2d(0.4, 0.4).asDiagonal()));
    for (std::size_t i = 0; i < cms.size(); ++i) {
      if (!is_physical(cms[i])) return fmt::format("state #{} is unphysical", i);
    }
    return {};
  });

  record("corrupted covariance matrix rejected", [&]() -> std::string {
    const Matrix bad = Matrix(Eigen::Vector2d(0.5 - 1e-6, 0.5 - 1e-6).asDiagonal());
    try {
      GaussianState{bad};
    } catch (const UnphysicalStateError&) {
      return {};
    }
    return "unphysical CM was accepted";
  });

  record("purity identity det = (1/2 + n_th)^2", [&]() -> std::string {
    for (int i = 0; i < 1000; ++i) {
      const SingleModeSpec s = random_spec();
      const double want      = std::pow(0.5 + s.thermal_photons(), 2);
      const double got       = single_mode_cm(s).determinant();
      if (std::abs(got - want) > 1e-10 * std::max(1.0, want)) {
        return fmt::format("N={} beta={}: det {} vs {}", s.n_tot, s.beta, got, want);
      }
    }
    return {};
  });

  record("identical inputs leave a beam splitter unchanged", [&]() -> std::string {
    for (int i = 0; i < 200; ++i) {
      const Matrix2 sigma = single_mode_cm(random_spec());
      for (double tau : {0.15, 0.5, 0.85}) {
        const TwoModeBlocks out = mix_two(sigma, sigma, tau);
        const double err = std::max({out.sigma12.cwiseAbs().maxCoeff(),
                                     (out.sigma1 - sigma).cwiseAbs().maxCoeff(),
                                     (out.sigma2 - sigma).cwiseAbs().maxCoeff()});
        if (err > 1e-12) return fmt::format("deviation {:.3e} at tau={}", err, tau);
      }
    }
    return {};
  });

  record("three-mode output blocks and correlation transfer", [&]() -> std::string {
    for (int i = 0; i < 100; ++i) {
      const double t   = 0.05 + 0.9 * unit(rng);
      const double tau = unit(rng);
      const SingleModeSpec src = random_spec();
      const auto run   = run_three_mode(ThreeModeProtocol::matched(src, t, tau));
      const Matrix2 delta = prepare_discordant_pair(src, t).block(0, 1);
      const double e13 = (run.output.block(0, 2) - std::sqrt(1.0 - tau) * delta).cwiseAbs().maxCoeff();
      const double e23 = (run.output.block(1, 2) - std::sqrt(tau) * delta).cwiseAbs().maxCoeff();
      const double e12 = run.output.block(0, 1).cwiseAbs().maxCoeff();
      const double frob = run.output.block(0, 2).squaredNorm() + run.output.block(1, 2).squaredNorm() -
                          delta.squaredNorm();
      if (std::max({e13, e23, e12}) > 1e-12) {
        return fmt::format("block error {:.3e}", std::max({e13, e23, e12}));
      }
      if (std::abs(frob) > 1e-10 * std::max(1.0, delta.squaredNorm())) {
        return fmt::format("Frobenius transfer error {:.3e}", frob);
      }
    }
    return {};
  });

  record("closed-form discord matches measurement search", [&]() -> std::string {
    const int count = options.quick ? 5 : 20;
    for (int i = 0; i < count; ++i) {
      const GaussianState s = random_two_mode_state(rng);
      for (DiscordSide side : {DiscordSide::A, DiscordSide::B}) {
        const double closed = gaussian_discord(s, side).value;
        const double oracle = discord_oracle(s, side).value;
        if (std::abs(closed - oracle) > 1e-6) {
          return fmt::format("state #{}: closed {} vs oracle {}", i, closed, oracle);
        }
      }
    }
    return {};
  });

  record("thermal entropy and split-thermal mutual information", [&]() -> std::string {
    for (double n : {0.1, 1.0, 10.0}) {
      const double g = (n + 1.0) * std::log(n + 1.0) - n * std::log(n);
      const double s = entropy(GaussianState::thermal(n));
      if (std::abs(s - g) > 1e-12) return fmt::format("S(thermal {}) = {} vs {}", n, s, g);
    }
    // Splitting is unitary on thermal(2) (x) vacuum: I = 2 g(1) - g(2) = 6 ln 2 - 3 ln 3.
    const auto mi = mutual_information(prepare_discordant_pair(SingleModeSpec::thermal(2.0), 0.5));
    const double want = 6.0 * std::log(2.0) - 3.0 * std::log(3.0);
    if (std::abs(mi.mutual_information - want) > 1e-9) {
      return fmt::format("I = {} vs 6 ln 2 - 3 ln 3", mi.mutual_information);
    }
    return {};
  });

  record("Monte Carlo matches CM-level intensity correlations", [&]() -> std::string {
    const std::int64_t frames = options.quick ? 1000 : 20000;
    for (int i = 0; i < 5; ++i) {
      speckle::BenchConfig bench = options.config.bench;
      bench.scenario             = speckle::Scenario::interference;
      bench.analysis_basis       = speckle::Basis::none;
      bench.eta                  = 1.0;
      bench.frames               = frames;
      bench.modes                = 50;
      bench.tau_mix              = 0.1 + 0.8 * unit(rng);
      bench.t_split              = 0.2 + 0.6 * unit(rng);
      bench.mean_photons         = 0.5 + 2.0 * unit(rng);
      bench.seed                 = options.config.bench.seed + 1000 + i;

      const auto batch = speckle::run_bench(bench);
      const auto run   = run_three_mode(ThreeModeProtocol::matched(
        SingleModeSpec::thermal(bench.mean_photons / bench.t_split), bench.t_split, bench.tau_mix));
      for (auto [h, k] : kPairs) {
        const double mc   = corr_coeff(batch.out[h], batch.out[k]);
        const double se   = corr_standard_error(batch.out[h], batch.out[k]);
        const double want = cm_to_intensity_corr(run.output, h, k, false);
        if (std::abs(mc - want) > 3.0 * se) {
          return fmt::format("config #{} pair {}-{}: MC {} vs CM {} (3 SE = {})", i, h + 1, k + 1,
                             mc, want, 3.0 * se);
        }
      }
    }
    return {};
  });

  record("bench output independent of worker count", [&]() -> std::string {
    speckle::BenchConfig bench = options.config.bench;
    bench.scenario             = speckle::Scenario::interference;
    bench.analysis_basis       = speckle::Basis::none;
    bench.frames               = options.quick ? 1000 : 5000;
    speckle::FrameBatch first;
    {
      ScopedWorkers w(1);
      first = speckle::run_bench(bench);
    }
    for (int workers : {2, 8}) {
      ScopedWorkers w(workers);
      const auto again = speckle::run_bench(bench);
      if (again.in != first.in || again.out != first.out) {
        return fmt::format("results differ with {} workers", workers);
      }
    }
    return {};
  });

  record("99% interval coverage at n = 50", [&]() -> std::string {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double rho = 0.5;
    int covered      = 0;
    const int runs   = 1000;
    std::vector<double> x(50), y(50);
    for (int r = 0; r < runs; ++r) {
      for (int i = 0; i < 50; ++i) {
        const double a = normal(rng);
        const double b = normal(rng);
        x[i]           = a;
        y[i]           = rho * a + std::sqrt(1.0 - rho * rho) * b;
      }
      const auto e = estimate_correlation(x, y, 0.99);
      if (e.ci_low <= rho && rho <= e.ci_high) ++covered;
    }
    if (covered < 970) return fmt::format("coverage {}/{}", covered, runs);
    return {};
  });

  return results;
}

// ---- manifest ---------------------------------------------------------------

std::string RunManifest::to_text() const
{
  std::string outs;
  for (std::size_t i = 0; i < outputs.size(); ++i) outs += (i ? ";" : "") + outputs[i];
  return fmt::format(
    "# cvlab run manifest: `cvlab {} --config <this file>` reproduces the outputs\n{}\n"
    "[manifest]\ncommand = {}\nversion = {}\noutput = {}\nduration_s = {:.3f}\n",
    command, to_config_text(config), command, version, outs, duration_s);
}

}  // namespace cvlab
