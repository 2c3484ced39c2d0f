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

#include "dpsynth/tester/fisher.h"

#include <cmath>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/hypergeometric.hpp>

#include "dpsynth/common/error.h"
#include "gtest/gtest.h"

namespace dpsynth::tester {
namespace {

double OracleUpperTail(int64_t k, int64_t population, int64_t successes,
                       int64_t draws) {
  boost::math::hypergeometric_distribution<double> d(
      static_cast<unsigned>(successes), static_cast<unsigned>(draws),
      static_cast<unsigned>(population));
  int64_t lo = std::max<int64_t>(0, draws - (population - successes));
  if (k <= lo) return 1.0;
  if (k > std::min(successes, draws)) return 0.0;
  return boost::math::cdf(
      boost::math::complement(d, static_cast<unsigned>(k - 1)));
}

TEST(FisherTest, UpperTailMatchesBoost) {
  struct Case {
    int64_t k, population, successes, draws;
  };
  for (Case c : {Case{5, 20, 8, 10}, Case{0, 20, 8, 10}, Case{9, 20, 8, 10},
                 Case{520, 2000, 1000, 1000}, Case{480, 2000, 1000, 1000},
                 Case{700, 2000, 900, 1000}, Case{3, 200, 10, 100},
                 Case{30, 4000, 40, 2000}}) {
    double expected = OracleUpperTail(c.k, c.population, c.successes, c.draws);
    double got =
        HypergeometricUpperTail(c.k, c.population, c.successes, c.draws);
    EXPECT_NEAR(got, expected, 1e-9 + 1e-7 * expected)
        << c.k << " " << c.population << " " << c.successes << " " << c.draws;
  }
}

TEST(FisherTest, BinomialQuantileMatchesInverseCdf) {
  for (int64_t n : {1, 7, 100, 5000}) {
    for (double p : {0.05, 0.5, 0.905}) {
      boost::math::binomial_distribution<double> d(static_cast<double>(n), p);
      for (double u : {0.001, 0.1, 0.5, 0.77, 0.999}) {
        int64_t k = BinomialQuantile(n, p, u);
        EXPECT_GE(boost::math::cdf(d, static_cast<double>(k)), u - 1e-12);
        if (k > 0) {
          EXPECT_LT(boost::math::cdf(d, static_cast<double>(k - 1)), u + 1e-12);
        }
      }
    }
  }
  EXPECT_EQ(BinomialQuantile(0, 0.3, 0.5), 0);
  EXPECT_EQ(BinomialQuantile(9, 1.0, 0.5), 9);
}

TEST(FisherTest, EqualCountsDoNotReject) {
  EXPECT_GT(HypothesisTest(500, 500, 1000, 0.5), 0.05);
}

TEST(FisherTest, LargeGapRejects) {
  EXPECT_LT(HypothesisTest(900, 100, 1000, 0.1), 1e-6);
}

TEST(FisherTest, PValueIsMonotoneInEpsilon) {
  for (int64_t c1 : {0, 40, 300, 650, 1000}) {
    for (int64_t c2 : {0, 30, 250, 600, 1000}) {
      double prev = -1.0;
      for (double eps = 0.0; eps <= 3.0; eps += 0.05) {
        double p = HypothesisTest(c1, c2, 1000, eps);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
        EXPECT_GE(p, prev - 1e-12) << c1 << " " << c2 << " " << eps;
        prev = p;
      }
    }
  }
}

TEST(FisherTest, DeterministicAndValidated) {
  EXPECT_EQ(HypothesisTest(620, 400, 1000, 0.3),
            HypothesisTest(620, 400, 1000, 0.3));
  EXPECT_THROW(HypothesisTest(5, 1, 0, 0.3), ContractError);
  EXPECT_THROW(HypothesisTest(11, 1, 10, 0.3), ContractError);
}

}  // namespace
}  // namespace dpsynth::tester
