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

#include "dpsynth/common/rng.h"
#include "dpsynth/lang/interpreter.h"
#include "dpsynth/lang/parser.h"
#include "dpsynth/synth/synth.h"

namespace dpsynth {
namespace {

std::shared_ptr<const lang::BoundProgram> Load(const std::string& name,
                                               int64_t size) {
  auto sketch = std::make_shared<const lang::MechanismSketch>(
      lang::LoadSketch(std::string(DPSYNTH_CORPUS_DIR) + "/" + name + ".dpm"));
  std::map<std::string, Rational> over = {
      {sketch->SizeArg().name, Rational(size)}};
  return std::make_shared<const lang::BoundProgram>(
      sketch, synth::FixParams(*sketch, over));
}

void RunSketch(benchmark::State& state, const std::string& name,
               const std::string& noise) {
  int64_t size = state.range(0);
  lang::ConcreteMechanism mech(Load(name, size),
                               lang::NoiseVector::Parse(noise));
  std::vector<int64_t> q(size, 1);
  RngStream rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(mech.Run(q, rng));
  state.SetItemsProcessed(state.iterations());
}

void BM_NoisyMax(benchmark::State& state) { RunSketch(state, "noisymax1", "4"); }
BENCHMARK(BM_NoisyMax)->Arg(5)->Arg(10)->Arg(50);

void BM_Svt(benchmark::State& state) { RunSketch(state, "svt", "4,8"); }
BENCHMARK(BM_Svt)->Arg(5)->Arg(10)->Arg(50);

void BM_SmartSum(benchmark::State& state) {
  RunSketch(state, "smartsum", "4,4");
}
BENCHMARK(BM_SmartSum)->Arg(5)->Arg(10)->Arg(50);

}  // namespace
}  // namespace dpsynth

BENCHMARK_MAIN();
