// Copyright 2026 The mvgini Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "mvgini/mvgini.hpp"

namespace
{

using namespace mvgini;

WeightedSample panel(Index n, Index d)
{
  synth::Rng rng(1234);
  return synth::random_nonnegative_sample(rng, n, d);
}

void BM_Gini1dSorted(benchmark::State & state)
{
  const WeightedSample s = panel(state.range(0), 1);
  const Vector x = s.column(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gini_1d(x, s.weights()));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gini1dSorted)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

void BM_Gini1dDoubleSum(benchmark::State & state)
{
  const WeightedSample s = panel(state.range(0), 1);
  const Vector x = s.column(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(synth::brute_force_gini_1d(x, s.weights()));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gini1dDoubleSum)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_GiniExact(benchmark::State & state)
{
  const WeightedSample s = panel(state.range(0), 3);
  GiniOptions opt;
  opt.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gini_p(s, 1.0, ExactEstimator{}, opt).value);
  }
}
BENCHMARK(BM_GiniExact)->ArgsProduct({{500, 2000, 8000}, {1, 0}})->Unit(benchmark::kMillisecond);

void BM_GiniPairSample(benchmark::State & state)
{
  const WeightedSample s = panel(100000, 3);
  GiniOptions opt;
  opt.threads = static_cast<unsigned>(state.range(1));
  const auto pairs = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gini_p(s, 1.0, PairSampleEstimator{7, pairs}, opt).value);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_GiniPairSample)->ArgsProduct({{1 << 18, 1 << 21}, {1, 0}})->Unit(benchmark::kMillisecond);

void BM_Decomposed(benchmark::State & state)
{
  const WeightedSample s = panel(state.range(0), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gini_1_decomposed(s).value);
  }
}
BENCHMARK(BM_Decomposed)->Range(1 << 10, 1 << 16);

void BM_Fit(benchmark::State & state)
{
  const auto method = static_cast<WhiteningMethod>(state.range(0));
  synth::Rng rng(99);
  const MomentSummary m = moments(synth::random_sample(rng, 400, state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(method, m).matrix.data());
  }
  state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_Fit)->ArgsProduct({{0, 1, 2, 3}, {3, 10}});

}  // namespace

BENCHMARK_MAIN();
