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

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cvlab/information.hpp"
#include "cvlab/speckle.hpp"

namespace cvlab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which transmissivity the discord sweep varies across its series.
enum class SweepAxis { tau_mix, t_split };

struct SweepConfig {
  double n_min   = 0.01;
  double n_max   = 10.0;
  int points     = 50;
  std::vector<double> taus{0.15, 0.5, 0.85};
  SweepAxis vary  = SweepAxis::tau_mix;
  bool shot_noise = true;
};

/// Everything a run needs. Defaults reproduce the ideal interference bench.
struct RunConfig {
  speckle::BenchConfig bench;
  double ci_level = 0.99;
  std::optional<speckle::Basis> basis;  // erasure: empty = none, deg45 and V
  DiscordSide discord_side = DiscordSide::B;
  SweepConfig sweep;

  void validate() const;
};

/// Parses the flat `[section]` / `key = value` format. `#` starts a comment.
/// Errors carry `<source>:<line>:` prefixes. A `[manifest]` section is
/// accepted and returned in `metadata` so run manifests load as configs.
RunConfig parse_config(std::istream& in, std::string_view source = "<config>",
                       std::map<std::string, std::string>* metadata = nullptr);

RunConfig load_config(const std::string& path,
                      std::map<std::string, std::string>* metadata = nullptr);

/// Sets one `section.key`; throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view dotted_key, std::string_view value);

/// Serializes every key with round-trip precision; parse_config inverts it.
std::string to_config_text(const RunConfig& config);

}  // namespace cvlab
