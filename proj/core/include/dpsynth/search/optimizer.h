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

#ifndef DPSYNTH_SEARCH_OPTIMIZER_H_
#define DPSYNTH_SEARCH_OPTIMIZER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/lang/noise_vector.h"
#include "dpsynth/search/bank.h"

namespace dpsynth::search {

struct DeOptions {
  int population = 50;
  // Generations.
  int steps = 500;
  double mutation = 0.7;
  double crossover = 0.9;
  double box_max = 16.0;
  double snap = lang::kSnapThreshold;
  uint64_t seed = 0;
  int threads = 0;
  // Coordinates held fixed (0 means no noise).
  std::map<int, double> pinned;
};

struct RegionMember {
  std::vector<double> point;
  lang::NoiseVector noise;
  double objective = 0.0;
};

struct NoiseRegion {
  // Sorted by objective, best first.
  std::vector<RegionMember> members;
  // Best objective after initialization and after each generation.
  std::vector<double> best_history;

  nlohmann::json ToJson() const;
};

using ObjectiveFn = std::function<double(const lang::NoiseVector&)>;

// rand/1/bin over [0, box_max]^dims, greedy replacement.
NoiseRegion DifferentialEvolution(int dims, const ObjectiveFn& objective,
                                  const DeOptions& options);

NoiseRegion GetNoiseRegion(const PresampleBank& bank, double epsilon,
                           double lambda, const DeOptions& options);

}  // namespace dpsynth::search

#endif  // DPSYNTH_SEARCH_OPTIMIZER_H_
