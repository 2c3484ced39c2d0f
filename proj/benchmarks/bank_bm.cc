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
#include "dpsynth/search/bank.h"
#include "dpsynth/search/optimizer.h"
#include "dpsynth/synth/synth.h"
#include "dpsynth/tester/event.h"

namespace dpsynth {
namespace {

std::shared_ptr<const lang::BoundProgram> NoisyMax() {
  auto sketch = std::make_shared<const lang::MechanismSketch>(lang::LoadSketch(
      std::string(DPSYNTH_CORPUS_DIR) + "/noisymax1.dpm"));
  return std::make_shared<const lang::BoundProgram>(
      sketch, synth::FixParams(*sketch, {}));
}

search::ExampleSet Examples() {
  search::ExampleSet ex;
  for (int64_t k = 0; k < 5; ++k) {
    ex.push_back({{1, 1, 1, 1, 1}, {2, 1, 1, 1, 1},
                  tester::Event::Singleton(lang::Value::Int(k)),
                  {1}, 4.0, 0.5});
  }
  return ex;
}

void BM_BankBuild(benchmark::State& state) {
  auto program = NoisyMax();
  search::BankOptions opt;
  opt.presamples = state.range(0);
  opt.threads = 1;
  for (auto _ : state) {
    search::PresampleBank bank(program, Examples(), opt);
    benchmark::DoNotOptimize(bank.presamples());
  }
}
BENCHMARK(BM_BankBuild)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_BankObjective(benchmark::State& state) {
  search::BankOptions opt;
  opt.presamples = state.range(0);
  opt.threads = 1;
  search::PresampleBank bank(NoisyMax(), Examples(), opt);
  double s = 1.0;
  for (auto _ : state) {
    lang::NoiseVector c(std::vector<std::optional<double>>{s});
    benchmark::DoNotOptimize(search::Objective(bank, c, 0.5, 1.0));
    s = s < 15.0 ? s + 0.37 : 1.0;
  }
}
BENCHMARK(BM_BankObjective)->Arg(10000)->Arg(50000);

}  // namespace
}  // namespace dpsynth

BENCHMARK_MAIN();
