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

// cvlab: experiment runner for the three-beam interference and polarization
// erasure benches, the discord sweep and the invariant suite.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cvlab/config.hpp"
#include "cvlab/harness.hpp"
#include "cvlab/parallel.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;  // dotted key -> text
  std::string out;
  bool quick  = false;
  int workers = 0;
};

// Flag name -> config key.
const std::vector<std::pair<std::string, std::string>> kFlags = {
  {"--seed", "bench.seed"},
  {"--frames", "bench.frames"},
  {"--modes", "bench.modes"},
  {"--tau", "bench.tau_mix"},
  {"--t-split", "bench.t_split"},
  {"--eta", "bench.eta"},
  {"--mean-photons", "source.mean_photons"},
  {"--ci-level", "analysis.ci_level"},
  {"--basis", "analysis.basis"},
};

void add_common(CLI::App* cmd, Overrides& o)
{
  cmd->add_option("-c,--config", o.config_path, "key=value config file (or a run manifest)");
  for (const auto& [flag, key] : kFlags) {
    cmd->add_option_function<std::string>(
      flag, [&o, key = key](const std::string& v) { o.values[key] = v; },
      fmt::format("override {}", key));
  }
  cmd->add_option("-o,--out", o.out, "CSV output path; a .manifest file is written next to it");
  cmd->add_flag("--quick", o.quick, "reduced frame count");
  cmd->add_option("--workers", o.workers, "OpenMP workers (output does not depend on it)");
}

cvlab::RunConfig resolve(const Overrides& o)
{
  cvlab::RunConfig config =
    o.config_path.empty() ? cvlab::RunConfig{} : cvlab::load_config(o.config_path);
  for (const auto& [key, value] : o.values) {
    try {
      cvlab::apply_setting(config, key, value);
    } catch (const cvlab::ConfigError& e) {
      throw cvlab::ConfigError(fmt::format("command line ({}): {}", key, e.what()));
    }
  }
  config.validate();
  return config;
}

void emit(const std::string& command, const cvlab::RunConfig& config, const std::string& csv,
          const Overrides& o, double seconds)
{
  if (o.out.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream(o.out, std::ios::binary) << csv;
  cvlab::RunManifest manifest;
  manifest.command    = command;
  manifest.config     = config;
  manifest.outputs    = {o.out};
  manifest.duration_s = seconds;
  std::ofstream(o.out + ".manifest", std::ios::binary) << manifest.to_text();
  std::cerr << fmt::format("wrote {} and {}.manifest\n", o.out, o.out);
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"cvlab: Gaussian-state engine and pseudo-thermal optical bench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cvlab::kVersion));

  Overrides o;
  bool inject_corrupt = false;
  auto* tables  = app.add_subcommand("tables", "interference bench: correlations before/after mixing");
  auto* erasure = app.add_subcommand("erasure", "polarization-erasure bench per analysis basis");
  auto* sweep   = app.add_subcommand("sweep-discord", "output correlations vs input discord");
  auto* check   = app.add_subcommand("validate", "run the invariant suite");
  for (auto* cmd : {tables, erasure, sweep, check}) add_common(cmd, o);
  check->add_flag("--inject-corrupt", inject_corrupt, "add an unphysical CM fixture");

  CLI11_PARSE(app, argc, argv);

  try {
    if (o.workers > 0) cvlab::set_worker_count(o.workers);
    cvlab::RunConfig config = resolve(o);
    const auto start        = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    if (check->parsed()) {
      cvlab::ValidationOptions opts{config, o.quick, inject_corrupt};
      bool ok = true;
      for (const auto& r : cvlab::run_validation(opts)) {
        std::cout << fmt::format("[{}] {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
        ok = ok && r.passed;
      }
      std::cout << fmt::format("{} ({:.1f} s)\n", ok ? "all checks passed" : "FAILED", elapsed());
      return ok ? 0 : 1;
    }

    if (o.quick) config.bench.frames = std::max<std::int64_t>(4, config.bench.frames / 2);

    if (tables->parsed()) {
      const std::string csv = cvlab::tables_csv(cvlab::run_tables(config));
      emit("tables", config, csv, o, elapsed());
    } else if (erasure->parsed()) {
      std::vector<std::string> warnings;
      const std::string csv = cvlab::erasure_csv(cvlab::run_erasure(config, &warnings));
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      emit("erasure", config, csv, o, elapsed());
    } else if (sweep->parsed()) {
      const std::string csv = cvlab::sweep_csv(cvlab::run_sweep(config));
      emit("sweep-discord", config, csv, o, elapsed());
    }
  } catch (const std::exception& e) {
    std::cerr << "cvlab: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
