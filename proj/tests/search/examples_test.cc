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

#include <memory>

#include "dpsynth/tester/adjacency.h"
#include "gtest/gtest.h"
#include "support/corpus.h"

namespace dpsynth::search {
namespace {

TEST(ExamplesTest, DirectionsForTwoHoles) {
  std::vector<std::vector<int>> expected = {{1, 1}, {1, 0}, {0, 1}};
  EXPECT_EQ(DirectionSet(2), expected);
  EXPECT_EQ(DirectionSet(1), std::vector<std::vector<int>>{{1}});
  auto three = DirectionSet(3);
  EXPECT_EQ(three.size(), 4u);
}

TEST(ExamplesTest, AddUniqueDropsRepeats) {
  ExampleSet set;
  Example a{{0}, {1}, tester::Event::AtLeast(1), {1}, 2.0, 0.3};
  Example b = a;
  b.scale = 4.0;
  AddUnique(&set, a);
  AddUnique(&set, b);
  EXPECT_EQ(set.size(), 1u);
  EXPECT_EQ(set.front().scale, 2.0);
}

TEST(ExamplesTest, SelectedExamplesLieInTheZone) {
  auto sketch = testing::LoadCorpus("abovet1");
  auto program = std::make_shared<const lang::BoundProgram>(
      sketch, testing::Bind(*sketch, 5));
  SelectOptions opt;
  opt.tester.trials = 4000;
  opt.tester.seed = 9;
  opt.noiseless_witness = false;
  auto examples = SelectExamples(program, DirectionSet(2), opt);
  ASSERT_FALSE(examples.empty());
  for (size_t i = 0; i < examples.size(); ++i) {
    const auto& e = examples[i];
    EXPECT_GE(e.p_value, 0.05);
    EXPECT_LE(e.p_value, 0.9);
    EXPECT_TRUE(tester::IsAdjacent(e.d1, e.d2));
    for (size_t j = 0; j < i; ++j) EXPECT_FALSE(examples[j].SameCase(e));
  }
}

// Threshold noise alone never hides the queries, whatever its scale.
TEST(ExamplesTest, WitnessesOutsideTheZone) {
  auto sketch = testing::LoadCorpus("abovet1");
  auto program = std::make_shared<const lang::BoundProgram>(
      sketch, testing::Bind(*sketch, 5));
  SelectOptions opt;
  opt.tester.trials = 4000;
  opt.tester.seed = 9;
  auto examples = SelectExamples(program, DirectionSet(2), opt);
  lang::ConcreteMechanism bare(program,
                               lang::NoiseVector::Parse("bot,bot"));
  RngStream rng(1);
  bool threshold_only = false;
  bool noiseless = false;
  for (const auto& e : examples) {
    EXPECT_TRUE(tester::IsAdjacent(e.d1, e.d2));
    if (e.p_value < opt.zone_low && e.direction == std::vector<int>{1, 0}) {
      threshold_only = true;
      EXPECT_EQ(e.scale, 12.0);
    }
    // Possibly merged with an equal zone example, so check the outputs.
    noiseless = noiseless || e.event.Contains(bare.Run(e.d1, rng)) !=
                                 e.event.Contains(bare.Run(e.d2, rng));
  }
  EXPECT_TRUE(threshold_only);
  EXPECT_TRUE(noiseless);
}

}  // namespace
}  // namespace dpsynth::search
