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

#ifndef DPSYNTH_TESTER_TESTER_H_
#define DPSYNTH_TESTER_TESTER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/lang/interpreter.h"
#include "dpsynth/tester/adjacency.h"
#include "dpsynth/tester/event.h"

namespace dpsynth::tester {

struct TesterOptions {
  // Runs per side of each input pair.
  int64_t trials = 20000;
  // Empty means {0.8, 1, 1.2} times the target.
  std::vector<double> test_epsilons;
  uint64_t seed = 0;
  int threads = 0;
  // Candidates per test epsilon re-measured on fresh runs.
  int confirm = 3;
  size_t max_events = 64;
  // Empty means the sketch's own adjacency pattern.
  std::string adjacency;
};

struct Counterexample {
  std::vector<int64_t> d1;
  std::vector<int64_t> d2;
  Event event;
  double p_value = 1.0;
  double test_epsilon = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  int64_t trials = 0;
  uint64_t seed = 0;

  nlohmann::json ToJson() const;
};

// A (pair, event, orientation) re-measured on fresh runs.
struct ConfirmedCandidate {
  std::vector<int64_t> d1;
  std::vector<int64_t> d2;
  Event event;
  double rho1 = 0.0;
  double rho2 = 0.0;
  // Indexed like TestReport::test_epsilons.
  std::vector<double> p_values;
  double p_at_target = 1.0;

  Counterexample AtTestEpsilon(size_t i, const std::vector<double>& eps,
                               int64_t trials, uint64_t seed) const;
  Counterexample AtTarget(double target, int64_t trials, uint64_t seed) const;
};

struct TestReport {
  double target_epsilon = 0.0;
  std::vector<double> test_epsilons;
  int64_t trials = 0;
  uint64_t seed = 0;
  // Sorted by p at the target epsilon, smallest first.
  std::vector<ConfirmedCandidate> confirmed;
  // Smallest confirmed p per test epsilon; 1 when nothing was found.
  std::vector<double> min_p;

  // Confirmed candidate with minimal p at the target, if any.
  std::optional<Counterexample> Best() const;
  // One record per confirmed candidate and test epsilon.
  std::vector<Counterexample> Records() const;
};

// Runs the statistical test. The first stage estimates every event of every
// pair from `trials` runs per side and scores both orientations; the
// `confirm` lowest p-values per test epsilon are then re-estimated on fresh
// runs so the reported p-values are not biased by the selection. Reentrant;
// deterministic given options.seed. Interpreter errors propagate.
TestReport TestMechanism(const lang::ConcreteMechanism& mechanism,
                         double target_epsilon, const TesterOptions& options);

}  // namespace dpsynth::tester

#endif  // DPSYNTH_TESTER_TESTER_H_
