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

#ifndef DPSYNTH_TESTER_ADJACENCY_H_
#define DPSYNTH_TESTER_ADJACENCY_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dpsynth::tester {

struct InputPair {
  std::vector<int64_t> d1;
  std::vector<int64_t> d2;

  friend bool operator==(const InputPair&, const InputPair&) = default;
  friend auto operator<=>(const InputPair&, const InputPair&) = default;
};

// Coordinatewise |d1_i - d2_i| <= 1 and equal lengths.
bool IsAdjacent(const std::vector<int64_t>& d1, const std::vector<int64_t>& d2);

// Names accepted by GenInputPairs.
//   all_differ: every coordinate may move by one (query answers of a
//               neighbouring database each change by at most one).
//   one_differ: a single coordinate moves by one.
std::vector<std::string> PatternNames();

// Deterministic list of adjacent pairs for \p pattern at \p length. Pairs
// that are equal up to swapping sides are listed once; callers test both
// orientations. Throws ContractError for an unknown pattern or length < 1.
std::vector<InputPair> GenInputPairs(std::string_view pattern, int length);

}  // namespace dpsynth::tester

#endif  // DPSYNTH_TESTER_ADJACENCY_H_
