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

#ifndef DPSYNTH_SYNTH_CANDIDATES_H_
#define DPSYNTH_SYNTH_CANDIDATES_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/lang/interpreter.h"
#include "dpsynth/search/bank.h"
#include "dpsynth/search/optimizer.h"
#include "dpsynth/synth/grammar.h"
#include "dpsynth/tester/tester.h"

namespace dpsynth::synth {

// One argument binding used for ranking and verification.
struct BindingContext {
  lang::ArgBinding binding;
  std::shared_ptr<const lang::BoundProgram> program;
  std::shared_ptr<const search::PresampleBank> bank;
  double epsilon = 0.0;
};

struct Verdict {
  std::string binding;
  double epsilon = 0.0;
  // Smallest confirmed p at the binding's epsilon, Bonferroni-adjusted for
  // the number of confirmed candidates it was picked from.
  double p_value = 1.0;
  size_t confirmed = 0;
  std::optional<tester::Counterexample> worst;

  nlohmann::json ToJson() const;
};

struct RankedCandidate {
  ExprVector exprs;
  size_t order = 0;  // enumeration index, the final tie break
  int violations = 0;
  // Largest log loss over all bindings and examples, relative to epsilon.
  double loss = 0.0;
  // Sum of the scales at the synthesis binding.
  double magnitude = 0.0;
  // Loss estimates per binding, per example.
  std::vector<std::vector<double>> losses;
  std::vector<Verdict> verdicts;

  nlohmann::json ToJson(const lang::MechanismSketch& sketch,
                        const std::string& t_arg) const;
};

// True when some region member lies within L1 distance \p radius; a missing
// value only matches a member without noise at that hole.
bool InNeighborhood(const std::vector<std::optional<double>>& values,
                    const search::NoiseRegion& region, double radius);

std::vector<ExprVector> EnumerateAndPrune(const Grammar& grammar,
                                          const search::NoiseRegion& region,
                                          const lang::MechanismSketch& sketch,
                                          const lang::ArgBinding& binding,
                                          double radius);

// Fewer violations, then higher loss, then smaller magnitude, then order.
bool RanksBefore(const RankedCandidate& a, const RankedCandidate& b);

std::vector<RankedCandidate> RankCandidates(
    const std::vector<ExprVector>& candidates,
    const lang::MechanismSketch& sketch, const lang::ArgBinding& gamma,
    const std::vector<BindingContext>& bindings, double slack,
    const std::string& t_arg, int threads);

struct VerifyResult {
  std::vector<RankedCandidate> survivors;
  std::vector<RankedCandidate> rejected;
};

// Tests every candidate at every binding; any confirmed p below
// \p reject_p rejects it.
VerifyResult FinalVerify(std::vector<RankedCandidate> top,
                         const lang::MechanismSketch& sketch,
                         const std::vector<BindingContext>& bindings,
                         const tester::TesterOptions& options, double reject_p,
                         const std::string& t_arg);

}  // namespace dpsynth::synth

#endif  // DPSYNTH_SYNTH_CANDIDATES_H_
