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

#ifndef DPSYNTH_LANG_ERRORS_H_
#define DPSYNTH_LANG_ERRORS_H_

#include <string>
#include <string_view>

#include "dpsynth/common/error.h"
#include "dpsynth/lang/ast.h"

namespace dpsynth::lang {

// Malformed source text. Positions are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(SourcePos pos, const std::string& message);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class TypeError : public Error {
 public:
  TypeError(SourcePos pos, const std::string& message);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

// Undeclared variable, argument or hole, or a hole used more than once.
class ScopeError : public Error {
 public:
  ScopeError(SourcePos pos, const std::string& message);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

enum class RuntimeErrorKind {
  kTraceExhausted,
  kDivisionByZero,
  kFuelExhausted,
  kUninitializedRead,
  kIndexOutOfRange,
  kBadInput,
  kMissingReturn,
};

std::string_view RuntimeErrorKindName(RuntimeErrorKind kind);

class RuntimeError : public Error {
 public:
  RuntimeError(RuntimeErrorKind kind, SourcePos pos,
               const std::string& message);
  RuntimeErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  RuntimeErrorKind kind_;
  SourcePos pos_;
};

}  // namespace dpsynth::lang

#endif  // DPSYNTH_LANG_ERRORS_H_
