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

#ifndef DPSYNTH_TESTER_FISHER_H_
#define DPSYNTH_TESTER_FISHER_H_

#include <cstdint>

namespace dpsynth::tester {

// P(X >= k) for X ~ Hypergeometric(population, successes, draws).
double HypergeometricUpperTail(int64_t k, int64_t population,
                               int64_t successes, int64_t draws);

// Smallest k with P(Binomial(n, p) <= k) >= u.
int64_t BinomialQuantile(int64_t n, double p, double u);

inline constexpr int kThinningRounds = 20;

// p-value for the null hypothesis rho1 <= e^epsilon * rho2 given c1 and c2
// hits out of n trials per side. c1 is thinned by e^-epsilon and the
// resulting 2x2 table is scored with a one-sided Fisher exact test; the
// result is the mean over kThinningRounds thinnings. The thinning draws are
// seeded by (c1, c2, n) only, so the value is a pure function of its
// arguments and non-decreasing in epsilon. Throws ContractError if n == 0 or
// a count is outside [0, n].
double HypothesisTest(int64_t c1, int64_t c2, int64_t n, double epsilon);

}  // namespace dpsynth::tester

#endif  // DPSYNTH_TESTER_FISHER_H_
