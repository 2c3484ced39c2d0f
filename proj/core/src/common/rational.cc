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

#include "dpsynth/common/rational.h"

#include <charconv>
#include <cstdlib>

#include "dpsynth/common/error.h"

namespace dpsynth {
namespace {

int64_t ParseInt(std::string_view text, std::string_view whole) {
  int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ContractError("malformed number '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    int64_t num = ParseInt(text.substr(0, slash), text);
    int64_t den = ParseInt(text.substr(slash + 1), text);
    if (den == 0) throw ContractError("zero denominator in '" +
                                      std::string(text) + "'");
    return Rational(num, den);
  }
  bool negative = !text.empty() && text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  auto dot = body.find('.');
  if (dot == std::string_view::npos) {
    int64_t v = ParseInt(body, text);
    return Rational(negative ? -v : v);
  }
  std::string_view int_part = body.substr(0, dot);
  std::string_view frac_part = body.substr(dot + 1);
  if (frac_part.empty() || frac_part.size() > 12 ||
      frac_part.front() == '-' || frac_part.front() == '+') {
    throw ContractError("malformed number '" + std::string(text) + "'");
  }
  int64_t whole = int_part.empty() ? 0 : ParseInt(int_part, text);
  int64_t frac = ParseInt(frac_part, text);
  int64_t den = 1;
  for (size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  Rational value(whole * den + frac, den);
  return negative ? -value : value;
}

std::string FormatRational(const Rational& value) {
  int64_t den = value.denominator();
  int64_t reduced = den;
  while (reduced % 2 == 0) reduced /= 2;
  while (reduced % 5 == 0) reduced /= 5;
  if (reduced != 1) {
    return std::to_string(value.numerator()) + "/" + std::to_string(den);
  }
  int64_t num = value.numerator();
  std::string sign = num < 0 ? "-" : "";
  uint64_t mag = static_cast<uint64_t>(num < 0 ? -num : num);
  uint64_t ip = mag / static_cast<uint64_t>(den);
  uint64_t rem = mag % static_cast<uint64_t>(den);
  std::string out = sign + std::to_string(ip);
  if (rem == 0) return out;
  out += '.';
  while (rem != 0) {
    rem *= 10;
    out += static_cast<char>('0' + rem / static_cast<uint64_t>(den));
    rem %= static_cast<uint64_t>(den);
  }
  return out;
}

}  // namespace dpsynth
