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

#include <memory>
#include <string>

#include "dpsynth/lang/interpreter.h"
#include "dpsynth/lang/parser.h"
#include "dpsynth/synth/synth.h"
#include "dpsynth/tester/fisher.h"
#include "dpsynth/tester/tester.h"

namespace dpsynth {
namespace {

void BM_HypothesisTest(benchmark::State& state) {
  int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tester::HypothesisTest(n / 3, n / 4, n, 0.5));
  }
}
BENCHMARK(BM_HypothesisTest)->Arg(1000)->Arg(20000)->Arg(100000);

void BM_TestNoisyMax(benchmark::State& state) {
  auto sketch = std::make_shared<const lang::MechanismSketch>(lang::LoadSketch(
      std::string(DPSYNTH_CORPUS_DIR) + "/noisymax1.dpm"));
  auto program = std::make_shared<const lang::BoundProgram>(
      sketch, synth::FixParams(*sketch, {}));
  lang::ConcreteMechanism mech(program, lang::NoiseVector::Parse("4"));
  tester::TesterOptions opt;
  opt.trials = state.range(0);
  opt.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tester::TestMechanism(mech, 0.5, opt));
  }
}
BENCHMARK(BM_TestNoisyMax)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpsynth

BENCHMARK_MAIN();
