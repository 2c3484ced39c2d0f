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

#ifndef DPSYNTH_COMMON_RATIONAL_H_
#define DPSYNTH_COMMON_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace dpsynth {

using Rational = boost::rational<int64_t>;

// Parses "3", "-2", "0.25", "3/2". Throws ContractError on malformed input.
Rational ParseRational(std::string_view text);

// Shortest decimal rendering when the value terminates, "p/q" otherwise.
std::string FormatRational(const Rational& value);

inline double ToDouble(const Rational& value) {
  return boost::rational_cast<double>(value);
}

}  // namespace dpsynth

#endif  // DPSYNTH_COMMON_RATIONAL_H_
