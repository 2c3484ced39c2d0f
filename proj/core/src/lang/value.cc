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

#include "dpsynth/lang/value.h"

#include <functional>

#include "dpsynth/common/error.h"

namespace dpsynth::lang {

std::string_view TypeName(Type type) {
  switch (type) {
    case Type::kInt:
      return "int";
    case Type::kBool:
      return "bool";
    case Type::kList:
      return "list";
  }
  return "?";
}

int64_t Value::AsInt() const {
  if (type_ != Type::kInt) throw ContractError("value is not an int");
  return scalar_;
}

bool Value::AsBool() const {
  if (type_ != Type::kBool) throw ContractError("value is not a bool");
  return scalar_ != 0;
}

const std::vector<int64_t>& Value::AsList() const {
  if (type_ != Type::kList) throw ContractError("value is not a list");
  return list_;
}

std::vector<int64_t>& Value::MutableList() {
  if (type_ != Type::kList) throw ContractError("value is not a list");
  return list_;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.type_ <=> b.type_; c != 0) return c;
  if (auto c = a.scalar_ <=> b.scalar_; c != 0) return c;
  return a.list_ <=> b.list_;
}

size_t Value::Hash() const {
  size_t h = std::hash<int64_t>()(scalar_) * 31 + static_cast<size_t>(type_);
  for (int64_t x : list_) {
    h ^= std::hash<int64_t>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Value::ToString() const {
  switch (type_) {
    case Type::kInt:
      return std::to_string(scalar_);
    case Type::kBool:
      return scalar_ ? "true" : "false";
    case Type::kList: {
      std::string out = "[";
      for (size_t i = 0; i < list_.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(list_[i]);
      }
      return out + "]";
    }
  }
  return "?";
}

nlohmann::json Value::ToJson() const {
  switch (type_) {
    case Type::kInt:
      return scalar_;
    case Type::kBool:
      return scalar_ != 0;
    case Type::kList:
      return list_;
  }
  return nullptr;
}

}  // namespace dpsynth::lang
