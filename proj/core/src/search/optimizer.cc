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

#include "dpsynth/search/optimizer.h"

#include <algorithm>
#include <numeric>

#include "dpsynth/common/error.h"
#include "dpsynth/common/parallel.h"
#include "dpsynth/common/rng.h"

namespace dpsynth::search {

nlohmann::json NoiseRegion::ToJson() const {
  nlohmann::json members_json = nlohmann::json::array();
  for (const auto& m : members) {
    members_json.push_back({{"point", m.point},
                            {"noise", m.noise.ToString()},
                            {"objective", m.objective}});
  }
  return {{"members", members_json}};
}

NoiseRegion DifferentialEvolution(int dims, const ObjectiveFn& objective,
                                  const DeOptions& options) {
  if (dims < 1) throw ContractError("need at least one dimension");
  if (options.population < 4) throw ContractError("population must be >= 4");
  if (options.steps < 1) throw ContractError("steps must be >= 1");
  const size_t np = static_cast<size_t>(options.population);
  RngStream rng(options.seed);
  auto uniform = [&] { return rng.UniformOpen(); };
  auto pin = [&](std::vector<double>& x) {
    for (const auto& [d, v] : options.pinned) {
      if (d < 0 || d >= dims) throw ContractError("pinned index out of range");
      x[d] = v;
    }
  };

  std::vector<std::vector<double>> pop(np, std::vector<double>(dims));
  for (auto& x : pop) {
    for (double& v : x) v = uniform() * options.box_max;
    pin(x);
  }
  std::vector<double> score(np);
  auto evaluate = [&](const std::vector<std::vector<double>>& points,
                      std::vector<double>& out) {
    ParallelFor(points.size(), options.threads, [&](size_t i) {
      out[i] = objective(lang::NoiseVector::FromRaw(points[i], options.snap));
    });
  };
  evaluate(pop, score);

  NoiseRegion region;
  region.best_history.push_back(*std::min_element(score.begin(), score.end()));
  std::vector<std::vector<double>> trial(np, std::vector<double>(dims));
  std::vector<double> trial_score(np);
  for (int step = 0; step < options.steps; ++step) {
    for (size_t i = 0; i < np; ++i) {
      size_t a, b, c;
      do a = rng.Below(np); while (a == i);
      do b = rng.Below(np); while (b == i || b == a);
      do c = rng.Below(np); while (c == i || c == a || c == b);
      size_t forced = rng.Below(static_cast<uint64_t>(dims));
      for (int d = 0; d < dims; ++d) {
        bool cross = static_cast<size_t>(d) == forced ||
                     uniform() < options.crossover;
        double v = cross ? pop[a][d] + options.mutation * (pop[b][d] - pop[c][d])
                         : pop[i][d];
        trial[i][d] = std::clamp(v, 0.0, options.box_max);
      }
      pin(trial[i]);
    }
    evaluate(trial, trial_score);
    for (size_t i = 0; i < np; ++i) {
      if (trial_score[i] <= score[i]) {
        pop[i] = trial[i];
        score[i] = trial_score[i];
      }
    }
    region.best_history.push_back(
        *std::min_element(score.begin(), score.end()));
  }

  std::vector<size_t> order(np);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return score[x] < score[y]; });
  for (size_t i : order) {
    region.members.push_back(
        {pop[i], lang::NoiseVector::FromRaw(pop[i], options.snap), score[i]});
  }
  return region;
}

NoiseRegion GetNoiseRegion(const PresampleBank& bank, double epsilon,
                           double lambda, const DeOptions& options) {
  int dims = bank.program().sketch().num_holes();
  return DifferentialEvolution(
      dims,
      [&](const lang::NoiseVector& c) {
        return Objective(bank, c, epsilon, lambda);
      },
      options);
}

}  // namespace dpsynth::search
