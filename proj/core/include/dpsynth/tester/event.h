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

#ifndef DPSYNTH_TESTER_EVENT_H_
#define DPSYNTH_TESTER_EVENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/lang/value.h"

namespace dpsynth::tester {

enum class EventKind { kSingleton, kValueSet, kAtLeast, kPattern };

enum class TermOp { kGe, kLt, kEq };

// out[index] op value.
struct PatternTerm {
  int index = 0;
  TermOp op = TermOp::kGe;
  int64_t value = 0;

  friend bool operator==(const PatternTerm&, const PatternTerm&) = default;
  friend auto operator<=>(const PatternTerm&, const PatternTerm&) = default;
};

// A set of outputs.
//   kSingleton: out == value
//   kValueSet:  out in values
//   kAtLeast:   out >= threshold (integer outputs)
//   kPattern:   every term holds (list outputs; a term whose index is past
//               the end of the list fails)
class Event {
 public:
  static Event Singleton(lang::Value value);
  static Event ValueSet(std::vector<lang::Value> values);
  static Event AtLeast(int64_t threshold);
  static Event Pattern(std::vector<PatternTerm> terms);

  EventKind kind() const { return kind_; }
  const std::vector<lang::Value>& values() const { return values_; }
  int64_t threshold() const { return threshold_; }
  const std::vector<PatternTerm>& terms() const { return terms_; }

  bool Contains(const lang::Value& out) const;
  // Largest list index the event inspects, -1 if none.
  int MaxIndex() const;
  // Length of list singletons, -1 otherwise.
  int ListLength() const;

  std::string ToString() const;
  nlohmann::json ToJson() const;

  friend bool operator==(const Event&, const Event&) = default;
  friend auto operator<=>(const Event&, const Event&) = default;

 private:
  EventKind kind_ = EventKind::kSingleton;
  std::vector<lang::Value> values_;
  int64_t threshold_ = 0;
  std::vector<PatternTerm> terms_;
};

// Observed outputs with multiplicities.
using OutputHistogram = std::map<lang::Value, int64_t>;

// Candidate events covering the observed support of \p samples:
//   int:  every observed singleton and half-lines at the 5%..95% quantiles
//   bool: both singletons
//   list: prefix patterns up to length 3 for 0/1 lists; per-element
//         half-lines, equalities and joint all-above/all-below patterns at
//         element quantiles for integer lists; the most frequent whole
//         lists as singletons.
// Deterministic and duplicate-free. Throws ContractError when \p samples is
// empty.
std::vector<Event> GenEvents(lang::Type output_type,
                             const OutputHistogram& samples);

}  // namespace dpsynth::tester

#endif  // DPSYNTH_TESTER_EVENT_H_
