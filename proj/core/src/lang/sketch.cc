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

#include "dpsynth/lang/sketch.h"

#include "dpsynth/common/error.h"

namespace dpsynth::lang {

std::string_view ArgTypeName(ArgType type) {
  switch (type) {
    case ArgType::kSize:
      return "size";
    case ArgType::kEpsilon:
      return "epsilon";
    case ArgType::kInt:
      return "int";
    case ArgType::kPosInt:
      return "posint";
  }
  return "?";
}

const ArgDecl* MechanismSketch::FindArg(std::string_view arg_name) const {
  for (const auto& arg : args) {
    if (arg.name == arg_name) return &arg;
  }
  return nullptr;
}

const ArgDecl& MechanismSketch::SizeArg() const {
  for (const auto& arg : args) {
    if (arg.type == ArgType::kSize) return arg;
  }
  throw ContractError("sketch " + name + " declares no size argument");
}

const ArgDecl& MechanismSketch::EpsilonArg() const {
  for (const auto& arg : args) {
    if (arg.type == ArgType::kEpsilon) return arg;
  }
  throw ContractError("sketch " + name + " declares no epsilon argument");
}

const Rational& ArgBinding::Get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) {
    throw ContractError("argument '" + name + "' is not bound");
  }
  return it->second;
}

Rational ArgBinding::Epsilon(const MechanismSketch& sketch) const {
  return Get(sketch.EpsilonArg().name);
}

int64_t ArgBinding::Size(const MechanismSketch& sketch) const {
  Rational v = Get(sketch.SizeArg().name);
  if (v.denominator() != 1) throw ContractError("size must be an integer");
  return v.numerator();
}

std::string ArgBinding::ToString() const {
  std::string out;
  for (const auto& [name, value] : values_) {
    if (!out.empty()) out += " ";
    out += name + "=" + FormatRational(value);
  }
  return out;
}

void ValidateBinding(const MechanismSketch& sketch,
                     const ArgBinding& binding) {
  for (const auto& [name, value] : binding.values()) {
    if (!sketch.FindArg(name)) {
      throw ContractError("binding names unknown argument '" + name + "'");
    }
  }
  for (const auto& arg : sketch.args) {
    if (!binding.Has(arg.name)) {
      throw ContractError("argument '" + arg.name + "' is not bound");
    }
    const Rational& v = binding.Get(arg.name);
    bool integral = v.denominator() == 1;
    switch (arg.type) {
      case ArgType::kEpsilon:
        if (v <= 0) throw ContractError("epsilon must be positive");
        break;
      case ArgType::kInt:
        if (!integral) {
          throw ContractError("argument '" + arg.name + "' must be integral");
        }
        break;
      case ArgType::kSize:
      case ArgType::kPosInt:
        if (!integral || v <= 0) {
          throw ContractError("argument '" + arg.name +
                              "' must be a positive integer");
        }
        break;
    }
  }
}

std::vector<int> CountHoleDraws(const MechanismSketch& sketch,
                                const ArgBinding& binding) {
  int64_t size = binding.Size(sketch);
  std::vector<int> capacities;
  capacities.reserve(sketch.holes.size());
  for (const auto& hole : sketch.holes) {
    bool many = hole.vector_noise || hole.in_loop;
    capacities.push_back(many ? static_cast<int>(size) : 1);
  }
  return capacities;
}

}  // namespace dpsynth::lang
