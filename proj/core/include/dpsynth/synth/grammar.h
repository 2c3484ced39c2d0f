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

#ifndef DPSYNTH_SYNTH_GRAMMAR_H_
#define DPSYNTH_SYNTH_GRAMMAR_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/common/rational.h"
#include "dpsynth/lang/noise_vector.h"
#include "dpsynth/lang/sketch.h"

namespace dpsynth::synth {

struct GrammarRanges {
  int coef_min = 1;
  int coef_max = 4;
  int size_exp_min = 0;
  int size_exp_max = 2;
  int inv_eps_exp_min = 1;
  int inv_eps_exp_max = 2;
  // Exponents of the threshold argument; off unless widened.
  int t_exp_min = 0;
  int t_exp_max = 0;
  std::string t_arg = "T";

  nlohmann::json ToJson() const;
};

// coef * size^a * T^c / eps^b, or no noise.
struct ScaleExpr {
  bool bottom = true;
  int coef = 1;
  int size_exp = 0;
  int inv_eps_exp = 1;
  int t_exp = 0;

  static ScaleExpr Bottom() { return {}; }

  // Throws ContractError when the value is not positive.
  std::optional<Rational> Eval(const lang::MechanismSketch& sketch,
                               const lang::ArgBinding& binding,
                               const std::string& t_arg = "T") const;
  std::string ToString(const lang::MechanismSketch& sketch,
                       const std::string& t_arg = "T") const;

  friend bool operator==(const ScaleExpr&, const ScaleExpr&) = default;
};

using ExprVector = std::vector<ScaleExpr>;

class Grammar {
 public:
  explicit Grammar(GrammarRanges ranges = {});

  const GrammarRanges& ranges() const { return ranges_; }
  // Enumeration order: coefficient, size exponent, epsilon exponent, T
  // exponent, with no-noise last.
  const std::vector<ScaleExpr>& elements() const { return elements_; }
  size_t size() const { return elements_.size(); }

 private:
  GrammarRanges ranges_;
  std::vector<ScaleExpr> elements_;
};

std::string ToString(const ExprVector& exprs,
                     const lang::MechanismSketch& sketch,
                     const std::string& t_arg = "T");

lang::NoiseVector Concretize(const ExprVector& exprs,
                             const lang::MechanismSketch& sketch,
                             const lang::ArgBinding& binding,
                             const std::string& t_arg = "T");

}  // namespace dpsynth::synth

#endif  // DPSYNTH_SYNTH_GRAMMAR_H_
