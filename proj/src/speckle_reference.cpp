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

namespace cvlab::speckle::reference {

FrameBatch run_bench(const BenchConfig& config)
{
  config.validate();
  const CounterRng src1     = stream_rng(config.seed, Stream::source1);
  const CounterRng src2     = stream_rng(config.seed, Stream::source2);
  const CounterRng pair_rng = stream_rng(config.seed, Stream::unmatched_pair);
  const CounterRng mix_rng  = stream_rng(config.seed, Stream::unmatched_mix);

  const double source_mean = config.mean_photons / config.t_split;
  const double beam3_mean  = (1.0 - config.t_split) * (config.mean_photons / config.t_split);
  const int unmatched      = unmatched_modes(config.modes, config.eta);

  FrameBatch batch;
  for (std::uint64_t frame = 0; frame < static_cast<std::uint64_t>(config.frames); ++frame) {
    const Field beam1   = sample_thermal_field(src1, frame, config.modes, config.mean_photons);
    const Field source2 = sample_thermal_field(src2, frame, config.modes, source_mean);
    auto [beam2, beam3] = split_field(source2, config.t_split);
    beam3 = substitute_modes(beam3, sample_thermal_field(pair_rng, frame, unmatched, beam3_mean));
    const Field independent = sample_thermal_field(mix_rng, frame, unmatched, config.mean_photons);

    double in[3], out[3];
    if (config.scenario == Scenario::interference) {
      const auto [out1, out2] = mix_fields(beam1, beam2, config.tau_mix, config.eta, independent);
      in[0]  = detect(beam1);
      in[1]  = detect(beam2);
      in[2]  = detect(beam3);
      out[0] = detect(out1);
      out[1] = detect(out2);
      out[2] = detect(beam3);
    } else {
      const JonesField j1 = polarize_h(beam1);
      const JonesField j2 = polarize_v(beam2);
      const JonesField j3 = polarize_v(beam3);
      const auto [o1, o2] =
        mix_jones(j1, polarize_v(substitute_modes(beam2, independent)), config.tau_mix);
      in[0]  = detect(j1, Basis::none);
      in[1]  = detect(j2, Basis::none);
      in[2]  = detect(j3, Basis::none);
      out[0] = detect(o1, config.analysis_basis);
      out[1] = detect(o2, config.analysis_basis);
      out[2] = detect(j3, config.analysis_basis);
    }
    for (int k = 0; k < 3; ++k) {
      batch.in[k].push_back(in[k]);
      batch.out[k].push_back(out[k]);
    }
  }
  return batch;
}

}  // namespace cvlab::speckle::reference
