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

#include "cvlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

namespace cvlab {

namespace {

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text)
{
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec]  = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("'{}' is not a valid number", text));
  }
  return value;
}

bool parse_bool(std::string_view text)
{
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(fmt::format("'{}' is not a boolean", text));
}

std::vector<double> parse_list(std::string_view text)
{
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<double>(trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
  static const std::map<std::string, Setter, std::less<>> table = {
    {"source.mean_photons",
     [](RunConfig& c, std::string_view v) { c.bench.mean_photons = parse_number<double>(v); }},
    {"bench.modes", [](RunConfig& c, std::string_view v) { c.bench.modes = parse_number<int>(v); }},
    {"bench.frames",
     [](RunConfig& c, std::string_view v) { c.bench.frames = parse_number<std::int64_t>(v); }},
    {"bench.tau_mix",
     [](RunConfig& c, std::string_view v) { c.bench.tau_mix = parse_number<double>(v); }},
    {"bench.t_split",
     [](RunConfig& c, std::string_view v) { c.bench.t_split = parse_number<double>(v); }},
    {"bench.eta", [](RunConfig& c, std::string_view v) { c.bench.eta = parse_number<double>(v); }},
    {"bench.seed",
     [](RunConfig& c, std::string_view v) { c.bench.seed = parse_number<std::uint64_t>(v); }},
    {"analysis.ci_level",
     [](RunConfig& c, std::string_view v) { c.ci_level = parse_number<double>(v); }},
    {"analysis.basis",
     [](RunConfig& c, std::string_view v) {
       if (v == "all") {
         c.basis.reset();
       } else {
         try {
           c.basis = speckle::parse_basis(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(e.what());
         }
       }
     }},
    {"analysis.discord_side",
     [](RunConfig& c, std::string_view v) {
       if (v == "A") {
         c.discord_side = DiscordSide::A;
       } else if (v == "B") {
         c.discord_side = DiscordSide::B;
       } else {
         throw ConfigError(fmt::format("discord side must be A or B, got '{}'", v));
       }
     }},
    {"sweep.n_min", [](RunConfig& c, std::string_view v) { c.sweep.n_min = parse_number<double>(v); }},
    {"sweep.n_max", [](RunConfig& c, std::string_view v) { c.sweep.n_max = parse_number<double>(v); }},
    {"sweep.points", [](RunConfig& c, std::string_view v) { c.sweep.points = parse_number<int>(v); }},
    {"sweep.taus", [](RunConfig& c, std::string_view v) { c.sweep.taus = parse_list(v); }},
    {"sweep.vary",
     [](RunConfig& c, std::string_view v) {
       if (v == "tau_mix") {
         c.sweep.vary = SweepAxis::tau_mix;
       } else if (v == "t_split") {
         c.sweep.vary = SweepAxis::t_split;
       } else {
         throw ConfigError(fmt::format("sweep.vary must be tau_mix or t_split, got '{}'", v));
       }
     }},
    {"sweep.shot_noise",
     [](RunConfig& c, std::string_view v) { c.sweep.shot_noise = parse_bool(v); }},
  };
  return table;
}

}  // namespace

void RunConfig::validate() const
{
  speckle::BenchConfig probe = bench;
  probe.scenario       = speckle::Scenario::interference;
  probe.analysis_basis = speckle::Basis::none;
  try {
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(ci_level > 0.0 && ci_level < 1.0)) {
    throw ConfigError(fmt::format("analysis.ci_level must lie in (0, 1), got {}", ci_level));
  }
  if (bench.frames < 4) throw ConfigError("bench.frames must be at least 4");
  if (!(sweep.n_min > 0.0) || !(sweep.n_max > sweep.n_min)) {
    throw ConfigError("sweep grid needs 0 < n_min < n_max");
  }
  if (sweep.points < 2) throw ConfigError("sweep.points must be at least 2");
  for (double t : sweep.taus) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError(fmt::format("sweep tau {} outside [0, 1]", t));
  }
}

void apply_setting(RunConfig& config, std::string_view dotted_key, std::string_view value)
{
  const auto& table = setters();
  const auto it     = table.find(dotted_key);
  if (it == table.end()) throw ConfigError(fmt::format("unknown key '{}'", dotted_key));
  it->second(config, trim(value));
}

RunConfig parse_config(std::istream& in, std::string_view source,
                       std::map<std::string, std::string>* metadata)
{
  RunConfig config;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;

    try {
      if (text.front() == '[') {
        if (text.back() != ']') throw ConfigError("unterminated section header");
        section = std::string(trim(text.substr(1, text.size() - 2)));
        if (section != "source" && section != "bench" && section != "analysis" &&
            section != "sweep" && section != "manifest") {
          throw ConfigError(fmt::format("unknown section [{}]", section));
        }
        continue;
      }
      const auto eq = text.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'");
      const auto key   = trim(text.substr(0, eq));
      const auto value = trim(text.substr(eq + 1));
      if (key.empty()) throw ConfigError("missing key");
      if (section.empty()) throw ConfigError(fmt::format("key '{}' outside any section", key));
      if (section == "manifest") {
        if (metadata) (*metadata)[std::string(key)] = std::string(value);
        continue;
      }
      apply_setting(config, section + "." + std::string(key), value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}:{}: {}", source, lineno, e.what()));
    }
  }
  return config;
}

RunConfig load_config(const std::string& path, std::map<std::string, std::string>* metadata)
{
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  return parse_config(in, path, metadata);
}

std::string to_config_text(const RunConfig& c)
{
  std::string taus;
  for (std::size_t i = 0; i < c.sweep.taus.size(); ++i) {
    taus += fmt::format("{}{}", i ? "," : "", c.sweep.taus[i]);
  }
  std::ostringstream out;
  out << "[source]\n"
      << fmt::format("mean_photons = {}\n", c.bench.mean_photons) << "\n[bench]\n"
      << fmt::format("modes = {}\n", c.bench.modes)
      << fmt::format("frames = {}\n", c.bench.frames)
      << fmt::format("tau_mix = {}\n", c.bench.tau_mix)
      << fmt::format("t_split = {}\n", c.bench.t_split)
      << fmt::format("eta = {}\n", c.bench.eta)
      << fmt::format("seed = {}\n", c.bench.seed) << "\n[analysis]\n"
      << fmt::format("ci_level = {}\n", c.ci_level)
      << fmt::format("basis = {}\n", c.basis ? speckle::to_string(*c.basis) : "all")
      << fmt::format("discord_side = {}\n", c.discord_side == DiscordSide::A ? "A" : "B")
      << "\n[sweep]\n"
      << fmt::format("n_min = {}\n", c.sweep.n_min)
      << fmt::format("n_max = {}\n", c.sweep.n_max)
      << fmt::format("points = {}\n", c.sweep.points) << fmt::format("taus = {}\n", taus)
      << fmt::format("vary = {}\n", c.sweep.vary == SweepAxis::tau_mix ? "tau_mix" : "t_split")
      << fmt::format("shot_noise = {}\n", c.sweep.shot_noise ? "true" : "false");
  return out.str();
}

}  // namespace cvlab
