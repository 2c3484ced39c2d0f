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

#ifndef DPSYNTH_LANG_PARSER_H_
#define DPSYNTH_LANG_PARSER_H_

#include <string>
#include <string_view>

#include "dpsynth/lang/sketch.h"

namespace dpsynth::lang {

// Parses and checks a sketch. Throws SyntaxError, TypeError or ScopeError.
//
//   mechanism Sum
//   input a
//   arg len : size
//   arg eps : epsilon
//   adjacency one_differ
//   hole ?1 Lap
//   begin
//     s := 0
//     i := 0
//     while i < len do
//       s := s + a[i] + Lap(?1)
//       i := i + 1
//     end
//     return s
//   end
MechanismSketch ParseSketch(std::string_view source);

// Reads and parses a file. Throws Error when the file cannot be read.
MechanismSketch LoadSketch(const std::string& path);

}  // namespace dpsynth::lang

#endif  // DPSYNTH_LANG_PARSER_H_
