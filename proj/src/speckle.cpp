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

#include "cvlab/speckle.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include <fmt/format.h>

namespace cvlab::speckle {

namespace {

void check_unit_interval(double x, const char* name)
{
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw std::invalid_argument(fmt::format("{} must lie in [0, 1], got {}", name, x));
  }
}

void check_same_size(std::size_t a, std::size_t b)
{
  if (a != b) {
    throw std::invalid_argument(fmt::format("mode-count mismatch: {} vs {}", a, b));
  }
}

}  // namespace

std::string_view to_string(Scenario s)
{
  return s == Scenario::interference ? "interference" : "erasure";
}

std::string_view to_string(Basis b)
{
  switch (b) {
    case Basis::none: return "none";
    case Basis::deg45: return "deg45";
    case Basis::V: return "V";
    case Basis::H: return "H";
  }
  return "none";
}

Scenario parse_scenario(std::string_view text)
{
  if (text == "interference") return Scenario::interference;
  if (text == "erasure") return Scenario::erasure;
  throw std::invalid_argument(fmt::format("unknown scenario '{}'", text));
}

Basis parse_basis(std::string_view text)
{
  if (text == "none") return Basis::none;
  if (text == "deg45" || text == "45") return Basis::deg45;
  if (text == "V" || text == "v") return Basis::V;
  if (text == "H" || text == "h") return Basis::H;
  throw std::invalid_argument(fmt::format("unknown analysis basis '{}'", text));
}

CounterRng stream_rng(std::uint64_t seed, Stream stream)
{
  return CounterRng(seed, static_cast<std::uint32_t>(stream));
}

void BenchConfig::validate() const
{
  if (modes < 1) throw std::invalid_argument(fmt::format("modes must be >= 1, got {}", modes));
  if (frames < 1) throw std::invalid_argument(fmt::format("frames must be >= 1, got {}", frames));
  if (!std::isfinite(mean_photons) || mean_photons <= 0.0) {
    throw std::invalid_argument(fmt::format("mean_photons must be > 0, got {}", mean_photons));
  }
  check_unit_interval(tau_mix, "tau_mix");
  check_unit_interval(eta, "eta");
  if (!std::isfinite(t_split) || t_split <= 0.0 || t_split >= 1.0) {
    // Beams 2 and 3 both need light, and the source carries mean / t_split.
    throw std::invalid_argument(fmt::format("t_split must lie in (0, 1), got {}", t_split));
  }
  if (scenario == Scenario::interference && analysis_basis != Basis::none) {
    throw std::invalid_argument("analysis_basis applies to the erasure scenario only");
  }
}

Field sample_thermal_field(const CounterRng& rng, std::uint64_t frame, int modes, double mean)
{
  if (modes < 0) throw std::invalid_argument("negative mode count");
  if (!(mean >= 0.0)) throw std::invalid_argument("thermal mean must be >= 0");
  const double scale = std::sqrt(mean);
  Field f(static_cast<std::size_t>(modes));
  for (int m = 0; m < modes; ++m) {
    f[m] = scale * rng.circular_normal(frame, static_cast<std::uint32_t>(m));
  }
  return f;
}

std::pair<Field, Field> split_field(const Field& field, double t)
{
  check_unit_interval(t, "split transmissivity");
  const double st = std::sqrt(t);
  const double sr = std::sqrt(1.0 - t);
  Field a(field.size());
  Field b(field.size());
  for (std::size_t m = 0; m < field.size(); ++m) {
    a[m] = st * field[m];
    b[m] = sr * field[m];
  }
  return {std::move(a), std::move(b)};
}

std::pair<Field, Field> mix_fields(const Field& a, const Field& b, double tau)
{
  check_unit_interval(tau, "tau");
  check_same_size(a.size(), b.size());
  const double st = std::sqrt(tau);
  const double sr = std::sqrt(1.0 - tau);
  Field oa(a.size());
  Field ob(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) {
    oa[m] = st * a[m] + sr * b[m];
    ob[m] = st * b[m] - sr * a[m];
  }
  return {std::move(oa), std::move(ob)};
}

int unmatched_modes(int modes, double eta)
{
  check_unit_interval(eta, "eta");
  return static_cast<int>(std::lround((1.0 - eta) * modes));
}

Field substitute_modes(const Field& field, const Field& replacement)
{
  if (replacement.size() > field.size()) {
    throw std::invalid_argument("replacement has more modes than the field");
  }
  Field out = field;
  std::copy(replacement.begin(), replacement.end(), out.begin());
  return out;
}

std::pair<Field, Field> mix_fields(const Field& a, const Field& b, double tau, double eta,
                                   const Field& independent)
{
  check_same_size(a.size(), b.size());
  const auto k = static_cast<std::size_t>(unmatched_modes(static_cast<int>(b.size()), eta));
  if (independent.size() < k) {
    throw std::invalid_argument(
      fmt::format("need {} independent modes for eta = {}, got {}", k, eta, independent.size()));
  }
  return mix_fields(a, substitute_modes(b, Field(independent.begin(), independent.begin() + k)),
                    tau);
}

JonesField polarize_h(const Field& field)
{
  JonesField j(field.size());
  for (std::size_t m = 0; m < field.size(); ++m) j[m] = {field[m], Amplitude{}};
  return j;
}

JonesField polarize_v(const Field& field)
{
  JonesField j(field.size());
  for (std::size_t m = 0; m < field.size(); ++m) j[m] = {Amplitude{}, field[m]};
  return j;
}

std::pair<JonesField, JonesField> mix_jones(const JonesField& a, const JonesField& b, double tau)
{
  check_unit_interval(tau, "tau");
  check_same_size(a.size(), b.size());
  const double st = std::sqrt(tau);
  const double sr = std::sqrt(1.0 - tau);
  JonesField oa(a.size());
  JonesField ob(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) {
    oa[m] = {st * a[m].h + sr * b[m].h, st * a[m].v + sr * b[m].v};
    ob[m] = {st * b[m].h - sr * a[m].h, st * b[m].v - sr * a[m].v};
  }
  return {std::move(oa), std::move(ob)};
}

double detect(const Field& field)
{
  double s = 0.0;
  for (const auto& a : field) s += std::norm(a);
  return s;
}

double detect(const JonesField& field, Basis basis)
{
  double s = 0.0;
  for (const auto& j : field) {
    switch (basis) {
      case Basis::none: s += std::norm(j.h) + std::norm(j.v); break;
      case Basis::deg45: s += 0.5 * std::norm(j.h + j.v); break;
      case Basis::V: s += std::norm(j.v); break;
      case Basis::H: s += std::norm(j.h); break;
    }
  }
  return s;
}

namespace {

// Per-worker scratch; the fused kernel below reuses it across frames and
// performs the same per-mode arithmetic as the field primitives.
struct Workspace {
  explicit Workspace(int modes)
    : beam1(modes), beam2(modes), beam3(modes), matched2(modes), out1(modes), out2(modes),
      jones1(modes), jones2(modes), jones3(modes), jout1(modes), jout2(modes)
  {}
  Field beam1, beam2, beam3, matched2, out1, out2;
  JonesField jones1, jones2, jones3, jout1, jout2;
};

struct FrameKernel {
  explicit FrameKernel(const BenchConfig& c)
    : config(c),
      src1(stream_rng(c.seed, Stream::source1)),
      src2(stream_rng(c.seed, Stream::source2)),
      pair_rng(stream_rng(c.seed, Stream::unmatched_pair)),
      mix_rng(stream_rng(c.seed, Stream::unmatched_mix)),
      source_mean(c.mean_photons / c.t_split),
      beam3_mean((1.0 - c.t_split) * (c.mean_photons / c.t_split)),
      unmatched(unmatched_modes(c.modes, c.eta)),
      st_split(std::sqrt(c.t_split)),
      sr_split(std::sqrt(1.0 - c.t_split)),
      st_mix(std::sqrt(c.tau_mix)),
      sr_mix(std::sqrt(1.0 - c.tau_mix))
  {}

  void operator()(std::uint64_t frame, Workspace& ws, double* in, double* out) const
  {
    const int M          = config.modes;
    const double scale1  = std::sqrt(config.mean_photons);
    const double scale2  = std::sqrt(source_mean);
    const double scale3u = std::sqrt(beam3_mean);
    const double scale2u = std::sqrt(config.mean_photons);

    for (int m = 0; m < M; ++m) {
      const auto idx = static_cast<std::uint32_t>(m);
      ws.beam1[m]    = scale1 * src1.circular_normal(frame, idx);
      const Amplitude s2 = scale2 * src2.circular_normal(frame, idx);
      ws.beam2[m]    = st_split * s2;
      ws.beam3[m]    = sr_split * s2;
    }
    for (int m = 0; m < unmatched; ++m) {
      const auto idx = static_cast<std::uint32_t>(m);
      ws.beam3[m]    = scale3u * pair_rng.circular_normal(frame, idx);
      ws.matched2[m] = scale2u * mix_rng.circular_normal(frame, idx);
    }
    for (int m = unmatched; m < M; ++m) ws.matched2[m] = ws.beam2[m];

    if (config.scenario == Scenario::interference) {
      for (int m = 0; m < M; ++m) {
        ws.out1[m] = st_mix * ws.beam1[m] + sr_mix * ws.matched2[m];
        ws.out2[m] = st_mix * ws.matched2[m] - sr_mix * ws.beam1[m];
      }
      in[0]  = detect(ws.beam1);
      in[1]  = detect(ws.beam2);
      in[2]  = detect(ws.beam3);
      out[0] = detect(ws.out1);
      out[1] = detect(ws.out2);
      out[2] = in[2];
      return;
    }

    const Amplitude zero{};
    for (int m = 0; m < M; ++m) {
      ws.jones1[m] = {ws.beam1[m], zero};
      ws.jones2[m] = {zero, ws.beam2[m]};
      ws.jones3[m] = {zero, ws.beam3[m]};
      const JonesMode a{ws.beam1[m], zero};
      const JonesMode b{zero, ws.matched2[m]};
      ws.jout1[m] = {st_mix * a.h + sr_mix * b.h, st_mix * a.v + sr_mix * b.v};
      ws.jout2[m] = {st_mix * b.h - sr_mix * a.h, st_mix * b.v - sr_mix * a.v};
    }
    in[0]  = detect(ws.jones1, Basis::none);
    in[1]  = detect(ws.jones2, Basis::none);
    in[2]  = detect(ws.jones3, Basis::none);
    out[0] = detect(ws.jout1, config.analysis_basis);
    out[1] = detect(ws.jout2, config.analysis_basis);
    out[2] = detect(ws.jones3, config.analysis_basis);
  }

  const BenchConfig& config;
  CounterRng src1, src2, pair_rng, mix_rng;
  double source_mean, beam3_mean;
  int unmatched;
  double st_split, sr_split, st_mix, sr_mix;
};

}  // namespace

FrameBatch run_frames(const BenchConfig& config, std::uint64_t begin, std::uint64_t end)
{
  config.validate();
  if (end < begin) throw std::invalid_argument("frame range is reversed");
  const auto n = static_cast<std::int64_t>(end - begin);

  FrameBatch batch;
  batch.first_frame = begin;
  for (int k = 0; k < 3; ++k) {
    batch.in[k].assign(static_cast<std::size_t>(n), 0.0);
    batch.out[k].assign(static_cast<std::size_t>(n), 0.0);
  }

  const FrameKernel kernel(config);
#pragma omp parallel
  {
    Workspace ws(config.modes);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      double in[3], out[3];
      kernel(begin + static_cast<std::uint64_t>(i), ws, in, out);
      for (int k = 0; k < 3; ++k) {
        batch.in[k][i]  = in[k];
        batch.out[k][i] = out[k];
      }
    }
  }
  return batch;
}

FrameBatch run_bench(const BenchConfig& config)
{
  config.validate();
  return run_frames(config, 0, static_cast<std::uint64_t>(config.frames));
}

}  // namespace cvlab::speckle
