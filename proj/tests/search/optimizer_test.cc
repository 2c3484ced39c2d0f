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

#include <cmath>

#include "gtest/gtest.h"
#include "search/micro.h"

namespace dpsynth::search {
namespace {

using tester::Event;

PresampleBank ShiftBank() {
  BankOptions opt;
  opt.presamples = 20000;
  opt.seed = 4;
  return PresampleBank(micro::ShiftedLaplace(),
                       {{{0}, {1}, Event::AtLeast(0), {}, 0.0, 1.0}}, opt);
}

TEST(OptimizerTest, BestObjectiveNeverIncreases) {
  auto bank = ShiftBank();
  DeOptions opt;
  opt.population = 12;
  opt.steps = 40;
  opt.seed = 6;
  auto region = GetNoiseRegion(bank, 0.5, 1.0, opt);
  ASSERT_EQ(region.best_history.size(), 41u);
  for (size_t i = 1; i < region.best_history.size(); ++i) {
    EXPECT_LE(region.best_history[i], region.best_history[i - 1]);
  }
  EXPECT_EQ(region.members.size(), 12u);
  for (size_t i = 1; i < region.members.size(); ++i) {
    EXPECT_LE(region.members[i - 1].objective, region.members[i].objective);
  }
}

TEST(OptimizerTest, SingleLaplaceConvergesToInverseEpsilon) {
  auto bank = ShiftBank();
  DeOptions opt;
  opt.population = 20;
  opt.steps = 60;
  opt.seed = 1;
  auto region = GetNoiseRegion(bank, 0.5, 1.0, opt);
  ASSERT_TRUE(region.members.front().noise[0].has_value());
  EXPECT_NEAR(*region.members.front().noise[0], 2.0, 0.3);
}

TEST(OptimizerTest, DeterministicAcrossThreadCounts) {
  auto bank = ShiftBank();
  DeOptions opt;
  opt.population = 8;
  opt.steps = 10;
  opt.seed = 3;
  opt.threads = 1;
  auto a = GetNoiseRegion(bank, 0.5, 1.0, opt);
  opt.threads = 3;
  auto b = GetNoiseRegion(bank, 0.5, 1.0, opt);
  EXPECT_EQ(a.ToJson(), b.ToJson());
}

TEST(OptimizerTest, PinnedCoordinatesStayFixed) {
  DeOptions opt;
  opt.population = 6;
  opt.steps = 15;
  opt.pinned = {{1, 0.0}};
  auto region = DifferentialEvolution(
      2,
      [](const lang::NoiseVector& c) {
        double x = c[0].value_or(0.0);
        return (x - 3.0) * (x - 3.0);
      },
      opt);
  for (const auto& m : region.members) {
    EXPECT_EQ(m.point[1], 0.0);
    EXPECT_FALSE(m.noise[1].has_value());
  }
}

TEST(OptimizerTest, SnapsSmallCoordinatesToNoNoise) {
  DeOptions opt;
  opt.population = 10;
  opt.steps = 80;
  auto region = DifferentialEvolution(
      1, [](const lang::NoiseVector& c) { return c[0] ? 1.0 + *c[0] : 0.0; },
      opt);
  EXPECT_FALSE(region.members.front().noise[0].has_value());
  EXPECT_EQ(region.members.front().objective, 0.0);
}

}  // namespace
}  // namespace dpsynth::search
