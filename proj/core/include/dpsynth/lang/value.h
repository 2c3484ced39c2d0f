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

#ifndef DPSYNTH_LANG_VALUE_H_
#define DPSYNTH_LANG_VALUE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace dpsynth::lang {

enum class Type { kInt, kBool, kList };

std::string_view TypeName(Type type);

// A runtime value: integer, boolean or list of integers.
class Value {
 public:
  Value() = default;
  static Value Int(int64_t v) { return Value(Type::kInt, v, {}); }
  static Value Bool(bool v) { return Value(Type::kBool, v ? 1 : 0, {}); }
  static Value List(std::vector<int64_t> v) {
    return Value(Type::kList, 0, std::move(v));
  }

  Type type() const { return type_; }
  int64_t AsInt() const;
  bool AsBool() const;
  const std::vector<int64_t>& AsList() const;
  std::vector<int64_t>& MutableList();

  friend bool operator==(const Value&, const Value&) = default;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  size_t Hash() const;
  // "3", "true", "[1,0,1]".
  std::string ToString() const;
  nlohmann::json ToJson() const;

 private:
  Value(Type type, int64_t scalar, std::vector<int64_t> list)
      : type_(type), scalar_(scalar), list_(std::move(list)) {}

  Type type_ = Type::kInt;
  int64_t scalar_ = 0;
  std::vector<int64_t> list_;
};

struct ValueHash {
  size_t operator()(const Value& v) const { return v.Hash(); }
};

}  // namespace dpsynth::lang

#endif  // DPSYNTH_LANG_VALUE_H_
