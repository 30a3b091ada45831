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


// Serial reference kernels against their OpenMP counterparts.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "cvlab/harness.hpp"
#include "cvlab/information.hpp"
#include "cvlab/speckle.hpp"
#include "cvlab/statistics.hpp"

namespace {

cvlab::speckle::BenchConfig bench_config(benchmark::State& state)
{
  cvlab::speckle::BenchConfig c;
  c.frames = state.range(0);
  c.modes  = 100;
  return c;
}

void BM_BenchReference(benchmark::State& state)
{
  const auto c = bench_config(state);
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::speckle::reference::run_bench(c));
  state.SetItemsProcessed(state.iterations() * c.frames);
}

void BM_BenchParallel(benchmark::State& state)
{
  const auto c = bench_config(state);
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::speckle::run_bench(c));
  state.SetItemsProcessed(state.iterations() * c.frames);
}

std::pair<std::vector<double>, std::vector<double>> series(std::size_t n)
{
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> h(n), k(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = e(rng);
    k[i] = h[i] + e(rng);
  }
  return {h, k};
}

void BM_CorrReference(benchmark::State& state)
{
  const auto [h, k] = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::reference::corr_coeff(h, k));
}

void BM_CorrParallel(benchmark::State& state)
{
  const auto [h, k] = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::corr_coeff(h, k));
}

void oracle(benchmark::State& state, cvlab::Execution execution)
{
  std::mt19937_64 rng(2);
  const auto st = cvlab::random_two_mode_state(rng);
  cvlab::OracleOptions opts;
  opts.grid      = static_cast<int>(state.range(0));
  opts.execution = execution;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvlab::discord_oracle(st, cvlab::DiscordSide::B, opts));
  }
}

void BM_OracleSerial(benchmark::State& state) { oracle(state, cvlab::Execution::serial); }
void BM_OracleParallel(benchmark::State& state) { oracle(state, cvlab::Execution::parallel); }

}  // namespace

BENCHMARK(BM_BenchReference)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BenchParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrReference)->Arg(1 << 20);
BENCHMARK(BM_CorrParallel)->Arg(1 << 20);
BENCHMARK(BM_OracleSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_OracleParallel)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
