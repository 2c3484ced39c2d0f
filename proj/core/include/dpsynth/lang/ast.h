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

#ifndef DPSYNTH_LANG_AST_H_
#define DPSYNTH_LANG_AST_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dpsynth/lang/value.h"

namespace dpsynth::lang {

struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class UnaryOp { kNeg, kNot };

enum class BinaryOp {
  kAdd, kSub, kMul, kDiv, kMod,
  kEq, kNe, kLt, kLe, kGt, kGe,
  kAnd, kOr,
};

enum class ExprKind {
  kVar,
  kIntLit,
  kBoolLit,
  kEmptyList,
  kUnary,
  kBinary,
  kLength,
  kIndex,
};

struct Expr {
  ExprKind kind = ExprKind::kIntLit;
  SourcePos pos;
  // kVar: name and resolved memory slot.
  std::string name;
  int slot = -1;
  int64_t int_value = 0;
  bool bool_value = false;
  UnaryOp unary_op = UnaryOp::kNeg;
  BinaryOp binary_op = BinaryOp::kAdd;
  // Operand for unary/length; lhs/rhs for binary; list/index for kIndex.
  std::unique_ptr<Expr> lhs;
  std::unique_ptr<Expr> rhs;
  Type type = Type::kInt;
};

enum class CommandKind {
  kSkip,
  kAssign,
  kNoisyAssign,
  kIf,
  kWhile,
  kAppend,
  kPrepend,
  kBreak,
  kReturn,
};

struct Command {
  CommandKind kind = CommandKind::kSkip;
  SourcePos pos;
  // Assignment or append/prepend target.
  std::string target;
  int slot = -1;
  // Assigned value, condition, appended element, or returned value. For a
  // noisy assignment this is the noise-free base; null means base 0.
  std::unique_ptr<Expr> expr;
  // Noisy assignments only: 0-based hole and whether it draws per element.
  int hole = -1;
  bool vector_noise = false;
  // if: then/else branches; while: body in then_body.
  std::vector<Command> then_body;
  std::vector<Command> else_body;
};

}  // namespace dpsynth::lang

#endif  // DPSYNTH_LANG_AST_H_
