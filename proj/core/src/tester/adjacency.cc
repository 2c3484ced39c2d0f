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

#include "dpsynth/tester/adjacency.h"

#include <algorithm>

#include "dpsynth/common/error.h"

namespace dpsynth::tester {
namespace {

using Vec = std::vector<int64_t>;

Vec Filled(int length, int64_t value) { return Vec(length, value); }

Vec WithFirst(int length, int64_t first, int64_t rest) {
  Vec v(length, rest);
  v[0] = first;
  return v;
}

Vec WithLast(int length, int64_t last, int64_t rest) {
  Vec v(length, rest);
  v[length - 1] = last;
  return v;
}

// First half (rounded down) gets \p head, the rest \p tail.
Vec Split(int length, int64_t head, int64_t tail) {
  Vec v(length, tail);
  for (int i = 0; i < length / 2; ++i) v[i] = head;
  return v;
}

std::vector<InputPair> AllDiffer(int n) {
  Vec ones = Filled(n, 1);
  Vec two_raised(n, 0);
  for (int i = 0; i < std::min(n, 2); ++i) two_raised[i] = 2;
  Vec alternating(n, 0);
  for (int i = 0; i < n; i += 2) alternating[i] = 2;
  return {
      {ones, WithFirst(n, 2, 1)},        // one above
      {ones, WithFirst(n, 0, 1)},        // one below
      {ones, WithFirst(n, 2, 0)},        // one above, rest below
      {ones, WithFirst(n, 0, 2)},        // one below, rest above
      {ones, Split(n, 0, 2)},            // half below, half above
      {ones, Filled(n, 2)},              // all above
      {Filled(n, 0), ones},              // all below
      {Split(n, 1, 0), Split(n, 0, 1)},  // x shape
      {two_raised, ones},
      {alternating, ones},
      {Filled(n, 2), Filled(n, 3)},  // crosses a threshold of 2
  };
}

std::vector<InputPair> OneDiffer(int n) {
  Vec ones = Filled(n, 1);
  Vec zeros = Filled(n, 0);
  return {
      {ones, WithFirst(n, 2, 1)},  {ones, WithFirst(n, 0, 1)},
      {zeros, WithFirst(n, 1, 0)}, {ones, WithLast(n, 2, 1)},
      {ones, WithLast(n, 0, 1)},   {zeros, WithLast(n, 1, 0)},
      {Filled(n, 2), WithFirst(n, 3, 2)},
  };
}

}  // namespace

bool IsAdjacent(const std::vector<int64_t>& d1,
                const std::vector<int64_t>& d2) {
  if (d1.size() != d2.size()) return false;
  for (size_t i = 0; i < d1.size(); ++i) {
    int64_t diff = d1[i] - d2[i];
    if (diff > 1 || diff < -1) return false;
  }
  return true;
}

std::vector<std::string> PatternNames() { return {"all_differ", "one_differ"}; }

std::vector<InputPair> GenInputPairs(std::string_view pattern, int length) {
  if (length < 1) throw ContractError("input length must be positive");
  std::vector<InputPair> raw;
  if (pattern == "all_differ") {
    raw = AllDiffer(length);
  } else if (pattern == "one_differ") {
    raw = OneDiffer(length);
  } else {
    throw ContractError("unknown adjacency pattern '" + std::string(pattern) +
                        "'");
  }
  std::vector<InputPair> pairs;
  for (auto& p : raw) {
    if (p.d1 == p.d2) continue;
    bool seen = false;
    for (const auto& q : pairs) {
      if ((q.d1 == p.d1 && q.d2 == p.d2) || (q.d1 == p.d2 && q.d2 == p.d1)) {
        seen = true;
        break;
      }
    }
    if (!seen) pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace dpsynth::tester
