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

#include <random>
#include <string>
#include <vector>

#include "cvlab/config.hpp"
#include "cvlab/statistics.hpp"

namespace cvlab {

inline constexpr const char* kVersion = "0.1.0";

// ---- tables: interference bench before/after mixing -------------------------

struct PairRow {
  int h = 0;  // 1-based beam labels
  int k = 0;
  CorrelationEstimate in;
  CorrelationEstimate out;
};

std::vector<PairRow> run_tables(const RunConfig& config);
std::string tables_csv(const std::vector<PairRow>& rows);

// ---- erasure: orthogonally polarized inputs, analysed per basis -------------

struct ErasureRow {
  speckle::Basis basis = speckle::Basis::none;
  std::string stage;  // "in" or "out"
  int h = 0;
  int k = 0;
  CorrelationEstimate estimate;
  bool defined = true;  // false when a beam is dark in this basis
};

std::vector<ErasureRow> run_erasure(const RunConfig& config, std::vector<std::string>* warnings);
std::string erasure_csv(const std::vector<ErasureRow>& rows);

// ---- sweep-discord: CM-level output correlations vs input discord ----------

struct SweepRow {
  double tau      = 0.0;
  double n_source = 0.0;
  double discord  = 0.0;
  double c13_out  = 0.0;
  double c23_out  = 0.0;
};

std::vector<SweepRow> run_sweep(const RunConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// ---- validate ---------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationOptions {
  RunConfig config;
  bool quick          = false;  // 10^3 MC frames, tolerances widened to 3 sigma at that n
  bool inject_corrupt = false;  // add an unphysical CM to the physicality check
};

std::vector<CheckResult> run_validation(const ValidationOptions& options);

/// Random physical two-mode state: local squeezers and rotations around a
/// beam splitter, applied to a thermal Williamson form.
GaussianState random_two_mode_state(std::mt19937_64& rng);

// ---- manifest ---------------------------------------------------------------

struct RunManifest {
  std::string command;
  RunConfig config;
  std::string version = kVersion;
  std::vector<std::string> outputs;
  double duration_s = 0.0;

  /// Config text plus a [manifest] section; loads back via load_config.
  std::string to_text() const;
};

}  // namespace cvlab
