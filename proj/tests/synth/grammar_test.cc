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

#include "dpsynth/synth/grammar.h"

#include "dpsynth/common/error.h"
#include "gtest/gtest.h"
#include "support/corpus.h"

namespace dpsynth::synth {
namespace {

TEST(GrammarTest, DefaultSizeIsTwentyFive) {
  Grammar g;
  EXPECT_EQ(g.size(), 4u * 3u * 2u + 1u);
  EXPECT_TRUE(g.elements().back().bottom);
}

TEST(GrammarTest, EveryElementIsPositive) {
  auto sketch = testing::LoadCorpus("abovet1");
  Grammar g;
  for (auto eps : {Rational(1, 5), Rational(1, 2), Rational(3, 2)}) {
    for (int64_t len : {1, 5, 10}) {
      auto b = testing::Bind(*sketch, len, eps);
      for (const auto& e : g.elements()) {
        auto v = e.Eval(*sketch, b);
        EXPECT_EQ(v.has_value(), !e.bottom);
        if (v) {
          EXPECT_GT(*v, 0);
          // Independent evaluation.
          double expect = e.coef * std::pow(static_cast<double>(len), e.size_exp) /
                          std::pow(ToDouble(eps), e.inv_eps_exp);
          EXPECT_NEAR(ToDouble(*v), expect, 1e-9 * expect);
        }
      }
    }
  }
}

TEST(GrammarTest, ThresholdExponents) {
  GrammarRanges r;
  r.t_exp_max = 1;
  Grammar g(r);
  EXPECT_EQ(g.size(), 4u * 3u * 2u * 2u + 1u);
  auto sketch = testing::LoadCorpus("abovet1");
  auto b = testing::Bind(*sketch, 5);
  ScaleExpr e{false, 1, 0, 1, 1};
  EXPECT_EQ(*e.Eval(*sketch, b), Rational(4));
  EXPECT_EQ(e.ToString(*sketch), "T/eps");
}

TEST(GrammarTest, Rendering) {
  auto sketch = testing::LoadCorpus("sum");
  EXPECT_EQ((ScaleExpr{false, 2, 0, 1, 0}).ToString(*sketch), "2/eps");
  EXPECT_EQ((ScaleExpr{false, 1, 0, 1, 0}).ToString(*sketch), "1/eps");
  EXPECT_EQ((ScaleExpr{false, 4, 2, 2, 0}).ToString(*sketch),
            "4*len^2/eps^2");
  EXPECT_EQ((ScaleExpr{false, 1, 1, 1, 0}).ToString(*sketch), "len/eps");
  EXPECT_EQ(ScaleExpr::Bottom().ToString(*sketch), "bot");
}

TEST(GrammarTest, ConcretizeUsesExactValues) {
  auto sketch = testing::LoadCorpus("noisymax2");
  auto b = testing::Bind(*sketch, 5, Rational(1, 5));
  auto n = Concretize({{false, 2, 0, 1, 0}, ScaleExpr::Bottom()}, *sketch, b);
  EXPECT_DOUBLE_EQ(*n[0], 10.0);
  EXPECT_FALSE(n[1].has_value());
}

TEST(GrammarTest, BadRangesThrow) {
  GrammarRanges r;
  r.coef_min = 0;
  EXPECT_THROW(Grammar{r}, ContractError);
}

}  // namespace
}  // namespace dpsynth::synth
