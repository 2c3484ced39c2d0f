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

#include "dpsynth/lang/interpreter.h"

#include "dpsynth/common/error.h"
#include "dpsynth/lang/errors.h"

namespace dpsynth::lang {
namespace {

enum class Flow { kNormal, kBreak, kReturn };

class Executor {
 public:
  Executor(const BoundProgram& program, std::vector<Value> initial,
           NoiseSource& source, HoleMask mask)
      : program_(program),
        source_(source),
        mask_(mask),
        slots_(std::move(initial)),
        set_(slots_.size(), 0) {
    size_t fixed = 1;
    for (const auto& arg : program.sketch().args) {
      fixed += arg.type == ArgType::kEpsilon ? 0 : 1;
    }
    for (size_t i = 0; i < fixed; ++i) set_[i] = 1;
  }

  Value Run() {
    if (ExecBlock(program_.sketch().body) != Flow::kReturn) {
      throw RuntimeError(RuntimeErrorKind::kMissingReturn, {},
                         "the body finished without returning");
    }
    return std::move(result_);
  }

 private:
  const Value& Read(const Expr& e) {
    if (!set_[e.slot]) {
      throw RuntimeError(RuntimeErrorKind::kUninitializedRead, e.pos,
                         "'" + e.name + "' is read before it is written");
    }
    return slots_[e.slot];
  }

  const std::vector<int64_t>& ListOperand(const Expr& e) {
    if (e.kind == ExprKind::kVar) return Read(e).AsList();
    scratch_ = Eval(e);
    return scratch_.AsList();
  }

  int64_t EvalInt(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kVar:
        return Read(e).AsInt();
      case ExprKind::kIntLit:
        return e.int_value;
      case ExprKind::kUnary:
        return -EvalInt(*e.lhs);
      case ExprKind::kLength:
        return static_cast<int64_t>(ListOperand(*e.lhs).size());
      case ExprKind::kIndex: {
        int64_t index = EvalInt(*e.rhs);
        const auto& list = ListOperand(*e.lhs);
        if (index < 0 || index >= static_cast<int64_t>(list.size())) {
          throw RuntimeError(RuntimeErrorKind::kIndexOutOfRange, e.pos,
                             "index " + std::to_string(index) +
                                 " into a list of length " +
                                 std::to_string(list.size()));
        }
        return list[static_cast<size_t>(index)];
      }
      case ExprKind::kBinary: {
        int64_t l = EvalInt(*e.lhs);
        int64_t r = EvalInt(*e.rhs);
        switch (e.binary_op) {
          case BinaryOp::kAdd:
            return l + r;
          case BinaryOp::kSub:
            return l - r;
          case BinaryOp::kMul:
            return l * r;
          case BinaryOp::kDiv:
          case BinaryOp::kMod:
            if (r == 0) {
              throw RuntimeError(RuntimeErrorKind::kDivisionByZero, e.pos,
                                 "zero denominator");
            }
            return e.binary_op == BinaryOp::kDiv ? l / r : l % r;
          default:
            break;
        }
        break;
      }
      default:
        break;
    }
    throw ContractError("expression is not an integer");
  }

  bool EvalBool(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kVar:
        return Read(e).AsBool();
      case ExprKind::kBoolLit:
        return e.bool_value;
      case ExprKind::kUnary:
        return !EvalBool(*e.lhs);
      case ExprKind::kBinary:
        switch (e.binary_op) {
          case BinaryOp::kAnd:
            return EvalBool(*e.lhs) && EvalBool(*e.rhs);
          case BinaryOp::kOr:
            return EvalBool(*e.lhs) || EvalBool(*e.rhs);
          case BinaryOp::kEq:
          case BinaryOp::kNe: {
            bool equal = e.lhs->type == Type::kBool
                             ? EvalBool(*e.lhs) == EvalBool(*e.rhs)
                             : EvalInt(*e.lhs) == EvalInt(*e.rhs);
            return e.binary_op == BinaryOp::kEq ? equal : !equal;
          }
          case BinaryOp::kLt:
            return EvalInt(*e.lhs) < EvalInt(*e.rhs);
          case BinaryOp::kLe:
            return EvalInt(*e.lhs) <= EvalInt(*e.rhs);
          case BinaryOp::kGt:
            return EvalInt(*e.lhs) > EvalInt(*e.rhs);
          case BinaryOp::kGe:
            return EvalInt(*e.lhs) >= EvalInt(*e.rhs);
          default:
            break;
        }
        break;
      default:
        break;
    }
    throw ContractError("expression is not a boolean");
  }

  Value Eval(const Expr& e) {
    switch (e.type) {
      case Type::kInt:
        return Value::Int(EvalInt(e));
      case Type::kBool:
        return Value::Bool(EvalBool(e));
      case Type::kList:
        if (e.kind == ExprKind::kEmptyList) return Value::List({});
        return Read(e);
    }
    throw ContractError("bad expression type");
  }

  void Write(int slot, Value v) {
    slots_[slot] = std::move(v);
    set_[slot] = 1;
  }

  Flow ExecBlock(const std::vector<Command>& block) {
    for (const auto& cmd : block) {
      Flow flow = Exec(cmd);
      if (flow != Flow::kNormal) return flow;
    }
    return Flow::kNormal;
  }

  Flow Exec(const Command& cmd) {
    switch (cmd.kind) {
      case CommandKind::kSkip:
        return Flow::kNormal;
      case CommandKind::kAssign:
        Write(cmd.slot, Eval(*cmd.expr));
        return Flow::kNormal;
      case CommandKind::kNoisyAssign: {
        bool silent = (mask_ >> cmd.hole) & 1U;
        if (cmd.vector_noise) {
          Value v = Eval(*cmd.expr);
          if (!silent) {
            for (auto& x : v.MutableList()) x += source_.Draw(cmd.hole);
          }
          Write(cmd.slot, std::move(v));
        } else {
          int64_t base = cmd.expr ? EvalInt(*cmd.expr) : 0;
          if (!silent) base += source_.Draw(cmd.hole);
          Write(cmd.slot, Value::Int(base));
        }
        return Flow::kNormal;
      }
      case CommandKind::kIf:
        return ExecBlock(EvalBool(*cmd.expr) ? cmd.then_body : cmd.else_body);
      case CommandKind::kWhile: {
        int64_t iterations = 0;
        while (EvalBool(*cmd.expr)) {
          if (++iterations > program_.fuel()) {
            throw RuntimeError(RuntimeErrorKind::kFuelExhausted, cmd.pos,
                               "loop exceeded " +
                                   std::to_string(program_.fuel()) +
                                   " iterations");
          }
          Flow flow = ExecBlock(cmd.then_body);
          if (flow == Flow::kBreak) break;
          if (flow == Flow::kReturn) return flow;
        }
        return Flow::kNormal;
      }
      case CommandKind::kAppend:
      case CommandKind::kPrepend: {
        int64_t x = EvalInt(*cmd.expr);
        if (!set_[cmd.slot]) {
          throw RuntimeError(RuntimeErrorKind::kUninitializedRead, cmd.pos,
                             "'" + cmd.target +
                                 "' is read before it is written");
        }
        auto& list = slots_[cmd.slot].MutableList();
        if (cmd.kind == CommandKind::kAppend) {
          list.push_back(x);
        } else {
          list.insert(list.begin(), x);
        }
        return Flow::kNormal;
      }
      case CommandKind::kBreak:
        return Flow::kBreak;
      case CommandKind::kReturn:
        result_ = Eval(*cmd.expr);
        return Flow::kReturn;
    }
    return Flow::kNormal;
  }

  const BoundProgram& program_;
  NoiseSource& source_;
  HoleMask mask_;
  std::vector<Value> slots_;
  std::vector<char> set_;
  Value scratch_;
  Value result_;
};

}  // namespace

NoiseTrace NoiseTrace::Zero(const std::vector<int>& capacities) {
  NoiseTrace trace;
  for (int c : capacities) trace.draws.emplace_back(c, 0);
  return trace;
}

NoiseTrace NoiseTrace::Sample(
    const std::vector<int>& capacities,
    const std::vector<std::optional<dist::NoiseDistribution>>& dists,
    RngStream& rng) {
  if (capacities.size() != dists.size()) {
    throw ContractError("one distribution per hole is required");
  }
  NoiseTrace trace;
  trace.draws.resize(capacities.size());
  for (size_t h = 0; h < capacities.size(); ++h) {
    if (!dists[h]) continue;
    trace.draws[h].reserve(capacities[h]);
    for (int i = 0; i < capacities[h]; ++i) {
      trace.draws[h].push_back(dists[h]->Sample(rng));
    }
  }
  return trace;
}

TraceSource::TraceSource(const NoiseTrace& trace)
    : trace_(trace), positions_(trace.draws.size(), 0) {}

int64_t TraceSource::Draw(int hole) {
  if (hole < 0 || hole >= static_cast<int>(positions_.size())) {
    throw ContractError("trace has no hole " + std::to_string(hole));
  }
  const auto& seq = trace_.draws[hole];
  int& pos = positions_[hole];
  if (pos >= static_cast<int>(seq.size())) {
    throw RuntimeError(RuntimeErrorKind::kTraceExhausted, {},
                       "hole ?" + std::to_string(hole + 1) + " needs more than " +
                           std::to_string(seq.size()) + " draws");
  }
  return seq[pos++];
}

int64_t SamplingSource::Draw(int hole) {
  const auto& d = dists_.at(hole);
  if (!d) throw ContractError("draw requested from a hole without noise");
  return d->Sample(rng_);
}

BoundProgram::BoundProgram(std::shared_ptr<const MechanismSketch> sketch,
                           ArgBinding binding)
    : sketch_(std::move(sketch)), binding_(std::move(binding)) {
  ValidateBinding(*sketch_, binding_);
  size_ = binding_.Size(*sketch_);
  fuel_ = 10 * size_ + 100;
  capacities_ = CountHoleDraws(*sketch_, binding_);
  initial_.assign(sketch_->slot_names.size(), Value());
  initial_[0] = Value::List({});
  size_t slot = 1;
  for (const auto& arg : sketch_->args) {
    if (arg.type == ArgType::kEpsilon) continue;
    initial_[slot++] = Value::Int(binding_.Get(arg.name).numerator());
  }
}

Value BoundProgram::Run(const std::vector<int64_t>& answers,
                        NoiseSource& source, HoleMask mask) const {
  if (static_cast<int64_t>(answers.size()) != size_) {
    throw RuntimeError(RuntimeErrorKind::kBadInput, {},
                       "expected " + std::to_string(size_) +
                           " answers, got " + std::to_string(answers.size()));
  }
  std::vector<Value> memory = initial_;
  memory[0] = Value::List(answers);
  Executor exec(*this, std::move(memory), source, mask);
  return exec.Run();
}

ConcreteMechanism::ConcreteMechanism(
    std::shared_ptr<const BoundProgram> program, NoiseVector noise)
    : program_(std::move(program)), noise_(std::move(noise)) {
  const auto& holes = program_->sketch().holes;
  if (noise_.size() != holes.size()) {
    throw ContractError("noise vector has " + std::to_string(noise_.size()) +
                        " entries for " + std::to_string(holes.size()) +
                        " holes");
  }
  for (size_t h = 0; h < holes.size(); ++h) {
    if (noise_[h]) {
      dists_.emplace_back(dist::NoiseDistribution(holes[h].family, *noise_[h]));
    } else {
      dists_.emplace_back(std::nullopt);
    }
  }
}

Value ConcreteMechanism::Run(const std::vector<int64_t>& answers,
                             RngStream& rng) const {
  SamplingSource source(dists_, rng);
  return program_->Run(answers, source, noise_.Mask());
}

}  // namespace dpsynth::lang
