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

#include "dpsynth/lang/parser.h"

#include <string>

#include "dpsynth/lang/errors.h"
#include "gtest/gtest.h"
#include "support/corpus.h"

namespace dpsynth::lang {
namespace {

using ::dpsynth::testing::Bind;
using ::dpsynth::testing::LoadCorpus;

std::string Wrap(const std::string& body,
                 const std::string& holes = "hole ?1 Lap\n") {
  return "mechanism Tiny\ninput q\narg len : size\narg eps : epsilon\n"
         "adjacency one_differ\n" +
         holes + "begin\n" + body + "end\n";
}

TEST(ParserTest, SumHasOneHoleAndTwoArguments) {
  auto sketch = LoadCorpus("sum");
  EXPECT_EQ(sketch->name, "Sum");
  ASSERT_EQ(sketch->holes.size(), 1u);
  EXPECT_EQ(sketch->holes[0].family, dist::Family::kLaplace);
  ASSERT_EQ(sketch->args.size(), 2u);
  EXPECT_EQ(sketch->args[0].name, "len");
  EXPECT_EQ(sketch->args[0].type, ArgType::kSize);
  EXPECT_EQ(sketch->args[1].type, ArgType::kEpsilon);
  EXPECT_EQ(sketch->output_type, Type::kInt);
}

TEST(ParserTest, SvtDeclaresThresholdAndCutoff) {
  auto sketch = LoadCorpus("svt");
  EXPECT_EQ(sketch->holes.size(), 2u);
  std::vector<std::string> names;
  for (const auto& a : sketch->args) names.push_back(a.name);
  EXPECT_EQ(names, (std::vector<std::string>{"len", "N", "T", "eps"}));
  EXPECT_EQ(sketch->output_type, Type::kList);
}

TEST(ParserTest, HoleOrderIsTextual) {
  auto sketch = LoadCorpus("abovet2");
  ASSERT_EQ(sketch->holes.size(), 3u);
  EXPECT_FALSE(sketch->holes[0].vector_noise);
  EXPECT_TRUE(sketch->holes[1].vector_noise);
  EXPECT_FALSE(sketch->holes[2].in_loop);
}

TEST(ParserTest, UndeclaredVariableIsAScopeError) {
  EXPECT_THROW(ParseSketch(Wrap("x := y\nz := Lap(?1)\nreturn x\n")),
               ScopeError);
}

TEST(ParserTest, SyntaxErrorReportsPosition) {
  try {
    ParseSketch(Wrap("x := (1 +\nz := Lap(?1)\nreturn x\n"));
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.pos().line, 8);
    EXPECT_GT(e.pos().column, 1);
  }
}

TEST(ParserTest, HoleUsedTwiceIsRejected) {
  EXPECT_THROW(
      ParseSketch(Wrap("x := Lap(?1)\ny := x + Lap(?1)\nreturn y\n")),
      ScopeError);
}

TEST(ParserTest, UnusedOrUndeclaredHoleIsRejected) {
  EXPECT_THROW(ParseSketch(Wrap("return 1\n")), ScopeError);
  EXPECT_THROW(
      ParseSketch(Wrap("x := Lap(?1)\ny := x + Lap(?2)\nreturn y\n")),
      ScopeError);
}

TEST(ParserTest, FamilyMismatchIsATypeError) {
  EXPECT_THROW(ParseSketch(Wrap("x := Exp(?1)\nreturn x\n")), TypeError);
}

TEST(ParserTest, HolesMustBeDense) {
  EXPECT_THROW(ParseSketch(Wrap("x := Lap(?2)\nreturn x\n", "hole ?2 Lap\n")),
               SyntaxError);
}

TEST(ParserTest, InconsistentTypesAreRejected) {
  EXPECT_THROW(
      ParseSketch(Wrap("x := 1\nx := true\ny := Lap(?1)\nreturn x\n")),
      TypeError);
  EXPECT_THROW(ParseSketch(Wrap("x := 1 + true\ny := Lap(?1)\nreturn y\n")),
               TypeError);
  EXPECT_THROW(ParseSketch(Wrap("if 1 then\nskip\nend\ny := Lap(?1)\n"
                                "return y\n")),
               TypeError);
}

TEST(ParserTest, BreakOutsideLoopIsRejected) {
  EXPECT_THROW(ParseSketch(Wrap("break\ny := Lap(?1)\nreturn y\n")),
               SyntaxError);
}

TEST(ParserTest, EpsilonIsNotVisibleInTheBody) {
  EXPECT_THROW(ParseSketch(Wrap("y := eps + Lap(?1)\nreturn y\n")),
               TypeError);
}

TEST(ParserTest, NoiseMustBeTheLastAddend) {
  EXPECT_THROW(ParseSketch(Wrap("y := Lap(?1) + 1\nreturn y\n")),
               SyntaxError);
  EXPECT_THROW(ParseSketch(Wrap("y := 1 - Lap(?1)\nreturn y\n")),
               SyntaxError);
}

TEST(ParserTest, CannotAssignToInput) {
  EXPECT_THROW(ParseSketch(Wrap("q := Lap(?1)\nreturn q\n")), TypeError);
}

TEST(ParserTest, MissingHeaderPiecesAreSyntaxErrors) {
  EXPECT_THROW(ParseSketch("mechanism X\nbegin\nreturn 1\nend\n"),
               SyntaxError);
  EXPECT_THROW(ParseSketch("mechanism X\ninput q\narg len : size\n"
                           "adjacency a\nhole ?1 Lap\nbegin\n"
                           "y := Lap(?1)\nreturn y\nend\n"),
               SyntaxError);
}

TEST(CountHoleDrawsTest, MatchesLoopAndVectorStructure) {
  auto abovet1 = LoadCorpus("abovet1");
  EXPECT_EQ(CountHoleDraws(*abovet1, Bind(*abovet1, 5)),
            (std::vector<int>{1, 5}));
  auto sum = LoadCorpus("sum");
  EXPECT_EQ(CountHoleDraws(*sum, Bind(*sum, 5)), (std::vector<int>{5}));
  auto histogram = LoadCorpus("histogram");
  EXPECT_EQ(CountHoleDraws(*histogram, Bind(*histogram, 5)),
            (std::vector<int>{5}));
  auto smartsum = LoadCorpus("smartsum");
  EXPECT_EQ(CountHoleDraws(*smartsum, Bind(*smartsum, 10)),
            (std::vector<int>{10, 10}));
}

TEST(ValidateBindingTest, RejectsMissingExtraAndIllTyped) {
  auto sum = LoadCorpus("sum");
  ArgBinding ok = Bind(*sum, 5);
  EXPECT_NO_THROW(ValidateBinding(*sum, ok));
  ArgBinding extra = ok;
  extra.Set("T", Rational(2));
  EXPECT_THROW(ValidateBinding(*sum, extra), ContractError);
  ArgBinding bad_eps = ok;
  bad_eps.Set("eps", Rational(0));
  EXPECT_THROW(ValidateBinding(*sum, bad_eps), ContractError);
  ArgBinding bad_len = ok;
  bad_len.Set("len", Rational(5, 2));
  EXPECT_THROW(ValidateBinding(*sum, bad_len), ContractError);
}

}  // namespace
}  // namespace dpsynth::lang
