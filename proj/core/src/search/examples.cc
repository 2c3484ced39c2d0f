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

#include "dpsynth/search/examples.h"

#include <algorithm>

#include "dpsynth/common/error.h"
#include "dpsynth/common/rational.h"
#include "dpsynth/common/rng.h"

namespace dpsynth::search {
namespace {

struct SweepResult {
  // Every confirmed candidate of every line-search point, in search order.
  ExampleSet all;
  // Per direction, the best counterexample at the largest scale if it is
  // still a clear one there.
  ExampleSet persistent;
};

Example FromCounterexample(const tester::Counterexample& c,
                           std::vector<int> direction, double scale) {
  return {c.d1, c.d2, c.event, std::move(direction), scale, c.p_value};
}

SweepResult Sweep(const std::shared_ptr<const lang::BoundProgram>& program,
                  const std::vector<std::vector<int>>& directions,
                  const SelectOptions& options) {
  if (options.scale_grid.empty()) {
    throw ContractError("scale grid must not be empty");
  }
  const auto& sketch = program->sketch();
  double eps = ToDouble(program->binding().Epsilon(sketch));
  double largest = *std::max_element(options.scale_grid.begin(),
                                     options.scale_grid.end());
  SweepResult result;
  uint64_t point = 0;
  for (const auto& dir : directions) {
    if (dir.size() != sketch.holes.size()) {
      throw ContractError("direction length differs from the hole count");
    }
    for (double s : options.scale_grid) {
      std::vector<std::optional<double>> scales;
      for (int u : dir) {
        scales.push_back(u > 0 ? std::optional<double>(s * u) : std::nullopt);
      }
      lang::ConcreteMechanism mech(program, lang::NoiseVector(scales));
      tester::TesterOptions topt = options.tester;
      topt.seed = MixSeed(options.tester.seed, point++);
      auto report = tester::TestMechanism(mech, eps, topt);
      for (const auto& c : report.confirmed) {
        if (!WellSupported(c, options.min_support)) continue;
        result.all.push_back({c.d1, c.d2, c.event, dir, s, c.p_at_target});
      }
      if (s != largest || !options.noiseless_witness) continue;
      for (const auto& c : report.confirmed) {
        if (c.p_at_target >= options.zone_low) break;
        if (!WellSupported(c, options.min_support)) continue;
        result.persistent.push_back(
            {c.d1, c.d2, c.event, dir, s, c.p_at_target});
        break;
      }
    }
  }
  return result;
}

ExampleSet InZone(const ExampleSet& all, double low, double high) {
  ExampleSet out;
  for (const auto& e : all) {
    if (e.p_value >= low && e.p_value <= high) AddUnique(&out, e);
  }
  return out;
}

// Best counterexample of the all-noiseless completion, if it is a clear one.
std::optional<Example> NoiselessWitness(
    const std::shared_ptr<const lang::BoundProgram>& program,
    const SelectOptions& options) {
  if (!options.noiseless_witness) return std::nullopt;
  const auto& sketch = program->sketch();
  double eps = ToDouble(program->binding().Epsilon(sketch));
  lang::ConcreteMechanism mech(
      program, lang::NoiseVector(std::vector<std::optional<double>>(
                   sketch.holes.size())));
  tester::TesterOptions topt = options.tester;
  topt.seed = MixSeed(options.tester.seed, ~uint64_t{0});
  auto best = tester::TestMechanism(mech, eps, topt).Best();
  if (!best || best->p_value >= options.zone_low) return std::nullopt;
  return FromCounterexample(*best, std::vector<int>(sketch.holes.size(), 0),
                            0.0);
}

// Zone examples, then the witnesses that no amount of noise on the other
// holes removes.
ExampleSet Select(const std::shared_ptr<const lang::BoundProgram>& program,
                  const SweepResult& sweep, const SelectOptions& options) {
  ExampleSet out = InZone(sweep.all, options.zone_low, options.zone_high);
  if (out.empty()) return out;
  for (const auto& e : sweep.persistent) AddUnique(&out, e);
  if (auto w = NoiselessWitness(program, options)) AddUnique(&out, *w);
  return out;
}

}  // namespace

nlohmann::json Example::ToJson() const {
  return {{"d1", d1},       {"d2", d2},       {"event", event.ToJson()},
          {"direction", direction}, {"scale", scale}, {"p", p_value}};
}

bool WellSupported(const tester::ConfirmedCandidate& c, double min_support) {
  return std::max(c.rho1, c.rho2) >= min_support;
}

void AddUnique(ExampleSet* set, Example e) {
  for (const auto& x : *set) {
    if (x.SameCase(e)) return;
  }
  set->push_back(std::move(e));
}

std::vector<std::vector<int>> DirectionSet(int holes) {
  if (holes < 1) throw ContractError("need at least one hole");
  std::vector<std::vector<int>> dirs;
  dirs.emplace_back(holes, 1);
  if (holes == 1) return dirs;
  for (int h = 0; h < holes; ++h) {
    std::vector<int> unit(holes, 0);
    unit[h] = 1;
    dirs.push_back(std::move(unit));
  }
  return dirs;
}

ExampleSet SelectExamples(std::shared_ptr<const lang::BoundProgram> program,
                          const std::vector<std::vector<int>>& directions,
                          const SelectOptions& options) {
  return Select(program, Sweep(program, directions, options), options);
}

Selection SelectExamplesWithFallback(
    std::shared_ptr<const lang::BoundProgram> program,
    const std::vector<std::vector<int>>& directions,
    const SelectOptions& options) {
  Selection result;
  result.examples = SelectExamples(program, directions, options);
  if (!result.examples.empty()) return result;
  SelectOptions wide = options;
  wide.zone_low = 0.01;
  wide.zone_high = 0.99;
  wide.tester.trials *= 2;
  result.widened = true;
  auto sweep = Sweep(program, directions, wide);
  result.examples = Select(program, sweep, wide);
  if (result.examples.empty()) {
    result.unfiltered = true;
    for (auto& e : sweep.all) AddUnique(&result.examples, std::move(e));
  }
  return result;
}

}  // namespace dpsynth::search
