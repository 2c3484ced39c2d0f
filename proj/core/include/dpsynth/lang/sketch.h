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

#ifndef DPSYNTH_LANG_SKETCH_H_
#define DPSYNTH_LANG_SKETCH_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dpsynth/common/rational.h"
#include "dpsynth/dist/distribution.h"
#include "dpsynth/lang/ast.h"

namespace dpsynth::lang {

inline constexpr int kMaxHoles = 8;

// size: the length of the private answer vector. epsilon: the privacy
// parameter, only visible to noise expressions.
enum class ArgType { kSize, kEpsilon, kInt, kPosInt };

std::string_view ArgTypeName(ArgType type);

struct ArgDecl {
  std::string name;
  ArgType type = ArgType::kInt;
};

struct HoleDecl {
  int id = 0;  // 0-based
  dist::Family family = dist::Family::kLaplace;
  bool vector_noise = false;
  bool in_loop = false;
  SourcePos pos;
};

struct MechanismSketch {
  std::string name;
  std::string input;
  std::vector<ArgDecl> args;
  std::string adjacency;
  std::vector<HoleDecl> holes;
  std::vector<Command> body;
  Type output_type = Type::kInt;
  // Memory layout: slot 0 is the input, then the non-epsilon arguments in
  // declaration order, then locals.
  std::vector<std::string> slot_names;
  std::string source;

  size_t num_holes() const { return holes.size(); }
  const ArgDecl* FindArg(std::string_view arg_name) const;
  const ArgDecl& SizeArg() const;
  const ArgDecl& EpsilonArg() const;
};

// Concrete values for every declared argument, epsilon included.
class ArgBinding {
 public:
  ArgBinding() = default;
  explicit ArgBinding(std::map<std::string, Rational> values)
      : values_(std::move(values)) {}

  void Set(const std::string& name, Rational value) { values_[name] = value; }
  bool Has(const std::string& name) const { return values_.count(name) > 0; }
  // Throws ContractError when unbound.
  const Rational& Get(const std::string& name) const;
  const std::map<std::string, Rational>& values() const { return values_; }

  Rational Epsilon(const MechanismSketch& sketch) const;
  int64_t Size(const MechanismSketch& sketch) const;

  // "len=5 eps=1/2 T=2".
  std::string ToString() const;

  friend bool operator==(const ArgBinding&, const ArgBinding&) = default;

 private:
  std::map<std::string, Rational> values_;
};

// Throws ContractError unless \p binding binds exactly the declared
// arguments with values of the right kind.
void ValidateBinding(const MechanismSketch& sketch, const ArgBinding& binding);

// Upper bound on draws per hole in one run: |q| for vector holes and holes
// inside a loop, 1 otherwise.
std::vector<int> CountHoleDraws(const MechanismSketch& sketch,
                                const ArgBinding& binding);

}  // namespace dpsynth::lang

#endif  // DPSYNTH_LANG_SKETCH_H_
