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

#include "dpsynth/synth/candidates.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpsynth/common/error.h"
#include "dpsynth/common/parallel.h"
#include "dpsynth/common/rng.h"

namespace dpsynth::synth {

nlohmann::json Verdict::ToJson() const {
  nlohmann::json j = {{"binding", binding}, {"epsilon", epsilon},
                      {"p", p_value}, {"confirmed", confirmed}};
  j["counterexample"] = worst ? worst->ToJson() : nlohmann::json(nullptr);
  return j;
}

nlohmann::json RankedCandidate::ToJson(const lang::MechanismSketch& sketch,
                                       const std::string& t_arg) const {
  nlohmann::json exprs_json = nlohmann::json::array();
  for (const auto& e : exprs) exprs_json.push_back(e.ToString(sketch, t_arg));
  nlohmann::json j = {{"exprs", exprs_json},
                      {"violations", violations},
                      {"loss", loss},
                      {"magnitude", magnitude}};
  nlohmann::json per_binding = nlohmann::json::array();
  for (const auto& l : losses) {
    double worst = l.empty() ? 1.0 : *std::max_element(l.begin(), l.end());
    per_binding.push_back(worst);
  }
  j["worst_loss_per_binding"] = per_binding;
  if (!verdicts.empty()) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : verdicts) v.push_back(x.ToJson());
    j["verdicts"] = v;
  }
  return j;
}

bool InNeighborhood(const std::vector<std::optional<double>>& values,
                    const search::NoiseRegion& region, double radius) {
  for (const auto& member : region.members) {
    double dist = 0.0;
    bool ok = true;
    for (size_t h = 0; h < values.size() && ok; ++h) {
      const auto& r = member.noise[h];
      if (!values[h]) {
        ok = !r.has_value();
      } else {
        dist += r ? std::abs(*values[h] - *r) : *values[h];
      }
    }
    if (ok && dist <= radius) return true;
  }
  return false;
}

std::vector<ExprVector> EnumerateAndPrune(const Grammar& grammar,
                                          const search::NoiseRegion& region,
                                          const lang::MechanismSketch& sketch,
                                          const lang::ArgBinding& binding,
                                          double radius) {
  if (region.members.empty()) throw ContractError("region is empty");
  if (!(radius > 0.0)) throw ContractError("radius must be positive");
  const size_t holes = sketch.holes.size();
  const auto& elems = grammar.elements();
  const std::string& t_arg = grammar.ranges().t_arg;
  std::vector<std::optional<double>> value(elems.size());
  for (size_t i = 0; i < elems.size(); ++i) {
    auto v = elems[i].Eval(sketch, binding, t_arg);
    if (v) value[i] = ToDouble(*v);
  }
  std::vector<ExprVector> out;
  std::vector<size_t> idx(holes, 0);
  std::vector<std::optional<double>> point(holes);
  while (true) {
    for (size_t h = 0; h < holes; ++h) point[h] = value[idx[h]];
    if (InNeighborhood(point, region, radius)) {
      ExprVector v;
      for (size_t h = 0; h < holes; ++h) v.push_back(elems[idx[h]]);
      out.push_back(std::move(v));
    }
    // Odometer, last hole fastest.
    size_t h = holes;
    while (h > 0 && ++idx[h - 1] == elems.size()) idx[--h] = 0;
    if (h == 0) break;
  }
  return out;
}

bool RanksBefore(const RankedCandidate& a, const RankedCandidate& b) {
  if (a.violations != b.violations) return a.violations < b.violations;
  if (a.loss != b.loss) return a.loss > b.loss;
  if (a.magnitude != b.magnitude) return a.magnitude < b.magnitude;
  return a.order < b.order;
}

std::vector<RankedCandidate> RankCandidates(
    const std::vector<ExprVector>& candidates,
    const lang::MechanismSketch& sketch, const lang::ArgBinding& gamma,
    const std::vector<BindingContext>& bindings, double slack,
    const std::string& t_arg, int threads) {
  if (bindings.empty()) throw ContractError("no ranking bindings");
  std::vector<RankedCandidate> ranked(candidates.size());
  ParallelFor(candidates.size(), threads, [&](size_t i) {
    RankedCandidate& r = ranked[i];
    r.exprs = candidates[i];
    r.order = i;
    for (const auto& e : r.exprs) {
      if (auto v = e.Eval(sketch, gamma, t_arg)) r.magnitude += ToDouble(*v);
    }
    r.loss = -std::numeric_limits<double>::infinity();
    for (const auto& b : bindings) {
      auto noise = Concretize(r.exprs, sketch, b.binding, t_arg);
      auto losses = b.bank->ExampleLosses(noise);
      double limit = std::exp(b.epsilon) * (1.0 + slack);
      for (double l : losses) {
        if (l > limit) ++r.violations;
        r.loss = std::max(r.loss, std::log(l) / b.epsilon);
      }
      r.losses.push_back(std::move(losses));
    }
  });
  std::stable_sort(ranked.begin(), ranked.end(), RanksBefore);
  return ranked;
}

VerifyResult FinalVerify(std::vector<RankedCandidate> top,
                         const lang::MechanismSketch& sketch,
                         const std::vector<BindingContext>& bindings,
                         const tester::TesterOptions& options, double reject_p,
                         const std::string& t_arg) {
  VerifyResult result;
  uint64_t run = 0;
  for (auto& cand : top) {
    bool rejected = false;
    for (const auto& b : bindings) {
      lang::ConcreteMechanism mech(
          b.program, Concretize(cand.exprs, sketch, b.binding, t_arg));
      tester::TesterOptions topt = options;
      topt.seed = MixSeed(options.seed, run++);
      auto report = tester::TestMechanism(mech, b.epsilon, topt);
      Verdict v;
      v.binding = b.binding.ToString();
      v.epsilon = b.epsilon;
      v.worst = report.Best();
      v.confirmed = report.confirmed.size();
      if (v.worst) {
        v.p_value = std::min(
            1.0, v.worst->p_value * static_cast<double>(v.confirmed));
      }
      rejected = rejected || v.p_value < reject_p;
      cand.verdicts.push_back(std::move(v));
    }
    (rejected ? result.rejected : result.survivors).push_back(std::move(cand));
  }
  std::stable_sort(result.survivors.begin(), result.survivors.end(),
                   RanksBefore);
  return result;
}

}  // namespace dpsynth::synth
