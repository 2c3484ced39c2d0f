// Copyright 2026 The dpsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "dpsynth/common/rng.h"
#include "dpsynth/dist/distribution.h"

namespace dpsynth {
namespace {

void BM_LaplaceSample(benchmark::State& state) {
  dist::DiscreteLaplace d(0, static_cast<double>(state.range(0)));
  RngStream rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(d.Sample(rng));
}
BENCHMARK(BM_LaplaceSample)->Arg(1)->Arg(4)->Arg(16);

void BM_ExponentialSample(benchmark::State& state) {
  dist::NoiseDistribution d(dist::Family::kExponential,
                            static_cast<double>(state.range(0)));
  RngStream rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(d.Sample(rng));
}
BENCHMARK(BM_ExponentialSample)->Arg(1)->Arg(4)->Arg(16);

void BM_LaplaceLogPmf(benchmark::State& state) {
  dist::DiscreteLaplace d(0, 4.0);
  int64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.LogPmf(k));
    k = (k + 7) % 41 - 20;
  }
}
BENCHMARK(BM_LaplaceLogPmf);

}  // namespace
}  // namespace dpsynth

BENCHMARK_MAIN();
