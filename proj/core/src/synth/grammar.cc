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

namespace dpsynth::synth {
namespace {

Rational Power(Rational base, int exp) {
  Rational out(1);
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

std::string Term(const std::string& name, int exp) {
  return exp == 1 ? name : name + "^" + std::to_string(exp);
}

}  // namespace

nlohmann::json GrammarRanges::ToJson() const {
  return {{"coef", {coef_min, coef_max}},
          {"size_exp", {size_exp_min, size_exp_max}},
          {"inv_eps_exp", {inv_eps_exp_min, inv_eps_exp_max}},
          {"t_exp", {t_exp_min, t_exp_max}},
          {"t_arg", t_arg}};
}

std::optional<Rational> ScaleExpr::Eval(const lang::MechanismSketch& sketch,
                                        const lang::ArgBinding& binding,
                                        const std::string& t_arg) const {
  if (bottom) return std::nullopt;
  Rational v(coef);
  v *= Power(Rational(binding.Size(sketch)), size_exp);
  v /= Power(binding.Epsilon(sketch), inv_eps_exp);
  if (t_exp > 0) v *= Power(binding.Get(t_arg), t_exp);
  if (v <= 0) {
    throw ContractError("scale expression is not positive under " +
                        binding.ToString());
  }
  return v;
}

std::string ScaleExpr::ToString(const lang::MechanismSketch& sketch,
                                const std::string& t_arg) const {
  if (bottom) return "bot";
  std::string num;
  if (coef != 1) num = std::to_string(coef);
  auto times = [&](const std::string& part) {
    num += num.empty() ? part : "*" + part;
  };
  if (size_exp > 0) times(Term(sketch.SizeArg().name, size_exp));
  if (t_exp > 0) times(Term(t_arg, t_exp));
  if (num.empty()) num = "1";
  if (inv_eps_exp > 0) {
    num += "/" + Term(sketch.EpsilonArg().name, inv_eps_exp);
  }
  return num;
}

Grammar::Grammar(GrammarRanges ranges) : ranges_(std::move(ranges)) {
  const auto& r = ranges_;
  if (r.coef_min < 1 || r.coef_max < r.coef_min || r.size_exp_min < 0 ||
      r.size_exp_max < r.size_exp_min || r.inv_eps_exp_min < 0 ||
      r.inv_eps_exp_max < r.inv_eps_exp_min || r.t_exp_min < 0 ||
      r.t_exp_max < r.t_exp_min) {
    throw ContractError("invalid grammar ranges");
  }
  for (int c = r.coef_min; c <= r.coef_max; ++c) {
    for (int a = r.size_exp_min; a <= r.size_exp_max; ++a) {
      for (int b = r.inv_eps_exp_min; b <= r.inv_eps_exp_max; ++b) {
        for (int t = r.t_exp_min; t <= r.t_exp_max; ++t) {
          elements_.push_back({false, c, a, b, t});
        }
      }
    }
  }
  elements_.push_back(ScaleExpr::Bottom());
}

std::string ToString(const ExprVector& exprs,
                     const lang::MechanismSketch& sketch,
                     const std::string& t_arg) {
  std::string out = "(";
  for (size_t i = 0; i < exprs.size(); ++i) {
    if (i > 0) out += ", ";
    out += exprs[i].ToString(sketch, t_arg);
  }
  return out + ")";
}

lang::NoiseVector Concretize(const ExprVector& exprs,
                             const lang::MechanismSketch& sketch,
                             const lang::ArgBinding& binding,
                             const std::string& t_arg) {
  std::vector<std::optional<double>> scales;
  for (const auto& e : exprs) {
    auto v = e.Eval(sketch, binding, t_arg);
    scales.push_back(v ? std::optional<double>(ToDouble(*v)) : std::nullopt);
  }
  return lang::NoiseVector(std::move(scales));
}

}  // namespace dpsynth::synth
