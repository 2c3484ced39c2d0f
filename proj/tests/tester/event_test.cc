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

#include "dpsynth/tester/event.h"

#include <algorithm>

#include "dpsynth/common/error.h"
#include "gtest/gtest.h"

namespace dpsynth::tester {
namespace {

using lang::Type;
using lang::Value;

bool Contains(const std::vector<Event>& events, const Event& e) {
  return std::find(events.begin(), events.end(), e) != events.end();
}

TEST(EventTest, NoisyMaxOutputsGetSingletons) {
  OutputHistogram hist;
  for (int64_t i = 1; i <= 5; ++i) hist[Value::Int(i)] = 100 * i;
  auto events = GenEvents(Type::kInt, hist);
  for (int64_t i = 1; i <= 5; ++i) {
    EXPECT_TRUE(Contains(events, Event::Singleton(Value::Int(i)))) << i;
  }
  for (const auto& e : events) {
    if (e.kind() == EventKind::kAtLeast) EXPECT_GT(e.threshold(), 1);
  }
}

TEST(EventTest, BinaryListsGetPrefixPatterns) {
  OutputHistogram hist;
  hist[Value::List({1, 0})] = 10;
  hist[Value::List({0, 0, 1})] = 5;
  hist[Value::List({0, 1})] = 7;
  auto events = GenEvents(Type::kList, hist);
  auto top = [](int i) { return PatternTerm{i, TermOp::kGe, 1}; };
  auto bot = [](int i) { return PatternTerm{i, TermOp::kLt, 1}; };
  EXPECT_TRUE(Contains(events, Event::Pattern({top(0)})));
  EXPECT_TRUE(Contains(events, Event::Pattern({bot(0), top(1)})));
  EXPECT_TRUE(Contains(events, Event::Pattern({bot(0), bot(1), top(2)})));
  EXPECT_TRUE(Contains(events, Event::Singleton(Value::List({1, 0}))));
}

TEST(EventTest, PatternMembership) {
  Event e = Event::Pattern({{0, TermOp::kLt, 1}, {1, TermOp::kGe, 1}});
  EXPECT_TRUE(e.Contains(Value::List({0, 1, 5})));
  EXPECT_FALSE(e.Contains(Value::List({1, 1})));
  EXPECT_FALSE(e.Contains(Value::List({0})));
  EXPECT_FALSE(e.Contains(Value::Int(0)));
  EXPECT_EQ(e.MaxIndex(), 1);
  EXPECT_EQ(Event::Pattern({{2, TermOp::kEq, 4}}).Contains(
                Value::List({0, 0, 4})),
            true);
}

TEST(EventTest, AtLeastAndSets) {
  EXPECT_TRUE(Event::AtLeast(3).Contains(Value::Int(3)));
  EXPECT_FALSE(Event::AtLeast(3).Contains(Value::Int(2)));
  Event set = Event::ValueSet({Value::Int(4), Value::Int(1), Value::Int(4)});
  EXPECT_EQ(set.values().size(), 2u);
  EXPECT_TRUE(set.Contains(Value::Int(1)));
  EXPECT_FALSE(set.Contains(Value::Int(2)));
  EXPECT_EQ(Event::Singleton(Value::List({1, 2, 3})).ListLength(), 3);
  EXPECT_EQ(Event::AtLeast(0).ListLength(), -1);
}

TEST(EventTest, IntListsGetElementEvents) {
  OutputHistogram hist;
  for (int64_t a = 0; a < 10; ++a) hist[Value::List({a, 20 - a})] = 1;
  auto events = GenEvents(Type::kList, hist);
  bool index1 = std::any_of(events.begin(), events.end(), [](const Event& e) {
    return e.kind() == EventKind::kPattern && e.MaxIndex() == 1 &&
           e.terms().size() == 1;
  });
  EXPECT_TRUE(index1);
  bool joint = std::any_of(events.begin(), events.end(), [](const Event& e) {
    return e.kind() == EventKind::kPattern && e.terms().size() == 2;
  });
  EXPECT_TRUE(joint);
}

TEST(EventTest, EmptySamplesThrow) {
  EXPECT_THROW(GenEvents(Type::kInt, {}), ContractError);
}

TEST(EventTest, JsonShape) {
  auto j = Event::Singleton(Value::Int(3)).ToJson();
  EXPECT_EQ(j["kind"], "singleton");
  EXPECT_EQ(j["value"], 3);
  auto p = Event::Pattern({{0, TermOp::kGe, 1}}).ToJson();
  EXPECT_EQ(p["terms"][0]["op"], ">=");
}

}  // namespace
}  // namespace dpsynth::tester
