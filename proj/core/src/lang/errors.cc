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

#include "dpsynth/lang/errors.h"

namespace dpsynth::lang {
namespace {

std::string WithPos(SourcePos pos, const std::string& message) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
         message;
}

}  // namespace

SyntaxError::SyntaxError(SourcePos pos, const std::string& message)
    : Error(WithPos(pos, "syntax error: " + message)), pos_(pos) {}

TypeError::TypeError(SourcePos pos, const std::string& message)
    : Error(WithPos(pos, "type error: " + message)), pos_(pos) {}

ScopeError::ScopeError(SourcePos pos, const std::string& message)
    : Error(WithPos(pos, "scope error: " + message)), pos_(pos) {}

std::string_view RuntimeErrorKindName(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::kTraceExhausted:
      return "trace exhausted";
    case RuntimeErrorKind::kDivisionByZero:
      return "division by zero";
    case RuntimeErrorKind::kFuelExhausted:
      return "loop fuel exhausted";
    case RuntimeErrorKind::kUninitializedRead:
      return "uninitialized read";
    case RuntimeErrorKind::kIndexOutOfRange:
      return "index out of range";
    case RuntimeErrorKind::kBadInput:
      return "bad input";
    case RuntimeErrorKind::kMissingReturn:
      return "missing return";
  }
  return "runtime error";
}

RuntimeError::RuntimeError(RuntimeErrorKind kind, SourcePos pos,
                           const std::string& message)
    : Error(WithPos(pos, std::string(RuntimeErrorKindName(kind)) + ": " +
                             message)),
      kind_(kind),
      pos_(pos) {}

}  // namespace dpsynth::lang
