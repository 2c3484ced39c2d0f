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

#ifndef DPSYNTH_SEARCH_EXAMPLES_H_
#define DPSYNTH_SEARCH_EXAMPLES_H_

#include <cstdint>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/lang/interpreter.h"
#include "dpsynth/tester/event.h"
#include "dpsynth/tester/tester.h"

namespace dpsynth::search {

// An input pair with an event, plus where it was found.
struct Example {
  std::vector<int64_t> d1;
  std::vector<int64_t> d2;
  tester::Event event;
  std::vector<int> direction;  // empty if not found by line search
  double scale = 0.0;
  double p_value = 1.0;

  bool SameCase(const Example& other) const {
    return d1 == other.d1 && d2 == other.d2 && event == other.event;
  }
  nlohmann::json ToJson() const;
};

using ExampleSet = std::vector<Example>;

// Appends \p e unless an example with the same pair and event exists.
void AddUnique(ExampleSet* set, Example e);

// The all-ones vector followed by the unit vectors; just (1) for one hole.
std::vector<std::vector<int>> DirectionSet(int holes);

struct SelectOptions {
  std::vector<double> scale_grid = {0.5, 1, 2, 3, 4, 6, 8, 12};
  double zone_low = 0.05;
  double zone_high = 0.9;
  // Also keep the strongest counterexample against the completion without
  // any noise, and per direction one that survives the largest scale, so
  // that leaving holes empty is never free.
  bool noiseless_witness = true;
  // Events rarer than this on both sides are too thin for the bank.
  double min_support = 0.01;
  tester::TesterOptions tester;
};

// True if the event was seen often enough on at least one side.
bool WellSupported(const tester::ConfirmedCandidate& c, double min_support);

// Tests scale * direction for every pair and keeps the confirmed
// counterexamples whose p at the bound epsilon lies in the zone.
ExampleSet SelectExamples(std::shared_ptr<const lang::BoundProgram> program,
                          const std::vector<std::vector<int>>& directions,
                          const SelectOptions& options);

struct Selection {
  ExampleSet examples;
  bool widened = false;     // zone widened and trials doubled
  bool unfiltered = false;  // zone dropped entirely
};

// Widens the zone to [0.01, 0.99] with doubled trials when nothing lands in
// the zone; if that is still empty, keeps every confirmed candidate.
Selection SelectExamplesWithFallback(
    std::shared_ptr<const lang::BoundProgram> program,
    const std::vector<std::vector<int>>& directions,
    const SelectOptions& options);

}  // namespace dpsynth::search

#endif  // DPSYNTH_SEARCH_EXAMPLES_H_
