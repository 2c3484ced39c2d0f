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

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/binomial.hpp>

#include "dpsynth/common/error.h"
#include "dpsynth/common/rng.h"

namespace dpsynth::tester {
namespace {

double LogGamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double LogChoose(int64_t n, int64_t k) {
  return LogGamma(static_cast<double>(n) + 1) -
         LogGamma(static_cast<double>(k) + 1) -
         LogGamma(static_cast<double>(n - k) + 1);
}

}  // namespace

double HypergeometricUpperTail(int64_t k, int64_t population,
                               int64_t successes, int64_t draws) {
  int64_t lo = std::max<int64_t>(0, draws - (population - successes));
  int64_t hi = std::min(successes, draws);
  if (k <= lo) return 1.0;
  if (k > hi) return 0.0;
  double log_total = LogChoose(population, draws);
  auto log_pmf = [&](int64_t x) {
    return LogChoose(successes, x) +
           LogChoose(population - successes, draws - x) - log_total;
  };
  // Ratio pmf(x+1)/pmf(x).
  auto up = [&](int64_t x) {
    return static_cast<double>((successes - x) * (draws - x)) /
           static_cast<double>((x + 1) *
                               (population - successes - draws + x + 1));
  };
  double mean = static_cast<double>(successes) * static_cast<double>(draws) /
                static_cast<double>(population);
  if (static_cast<double>(k) >= mean) {
    double term = std::exp(log_pmf(k));
    double sum = 0.0;
    for (int64_t x = k; x <= hi; ++x) {
      sum += term;
      if (term < sum * 1e-17) break;
      if (x < hi) term *= up(x);
    }
    return std::min(1.0, sum);
  }
  // Lower side is short: 1 - P(X <= k - 1).
  double term = std::exp(log_pmf(k - 1));
  double sum = 0.0;
  for (int64_t x = k - 1; x >= lo; --x) {
    sum += term;
    if (term < sum * 1e-17) break;
    if (x > lo) term /= up(x - 1);
  }
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

int64_t BinomialQuantile(int64_t n, double p, double u) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  int64_t k = static_cast<int64_t>(std::floor(static_cast<double>(n) * p));
  k = std::clamp<int64_t>(k, 0, n);
  double cdf = boost::math::cdf(dist, static_cast<double>(k));
  double pmf = boost::math::pdf(dist, static_cast<double>(k));
  double odds = p / (1.0 - p);
  if (cdf >= u) {
    while (k > 0) {
      double below = cdf - pmf;
      if (below < u) break;
      pmf *= static_cast<double>(k) / static_cast<double>(n - k + 1) / odds;
      cdf = below;
      --k;
    }
    return k;
  }
  while (cdf < u && k < n) {
    pmf *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
    ++k;
    cdf += pmf;
  }
  return k;
}

double HypothesisTest(int64_t c1, int64_t c2, int64_t n, double epsilon) {
  if (n <= 0) throw ContractError("hypothesis test needs n > 0");
  if (c1 < 0 || c1 > n || c2 < 0 || c2 > n) {
    throw ContractError("counts must lie in [0, n]");
  }
  double keep = std::exp(-epsilon);
  RngStream rng(MixSeed(MixSeed(static_cast<uint64_t>(c1),
                                static_cast<uint64_t>(c2)),
                        static_cast<uint64_t>(n)));
  double total = 0.0;
  for (int round = 0; round < kThinningRounds; ++round) {
    int64_t thinned = BinomialQuantile(c1, keep, rng.UniformOpen());
    total += HypergeometricUpperTail(thinned, 2 * n, thinned + c2, n);
  }
  return total / kThinningRounds;
}

}  // namespace dpsynth::tester
