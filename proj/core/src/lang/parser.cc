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

#include "dpsynth/lang/parser.h"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "dpsynth/common/error.h"
#include "dpsynth/lang/errors.h"

namespace dpsynth::lang {
namespace {

enum class TokKind { kIdent, kInt, kHole, kSym };

struct Token {
  TokKind kind;
  std::string text;
  int64_t value = 0;
  SourcePos pos;
};

struct Line {
  std::vector<Token> tokens;
  SourcePos end;
};

bool IsNoiseKeyword(const std::string& s) {
  return s == "Lap" || s == "Exp" || s == "LapVec" || s == "ExpVec";
}

std::vector<Line> Tokenize(std::string_view source) {
  std::vector<Line> lines;
  int line_no = 0;
  size_t start = 0;
  while (start <= source.size()) {
    size_t nl = source.find('\n', start);
    if (nl == std::string_view::npos) nl = source.size();
    std::string_view text = source.substr(start, nl - start);
    ++line_no;
    Line line;
    size_t i = 0;
    auto pos = [&](size_t col) { return SourcePos{line_no, int(col) + 1}; };
    while (i < text.size()) {
      char c = text[i];
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[j])) ||
                text[j] == '_')) {
          ++j;
        }
        line.tokens.push_back(
            {TokKind::kIdent, std::string(text.substr(i, j - i)), 0, pos(i)});
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[j]))) {
          ++j;
        }
        std::string digits(text.substr(i, j - i));
        if (digits.size() > 15) {
          throw SyntaxError(pos(i), "integer literal too large");
        }
        line.tokens.push_back(
            {TokKind::kInt, digits, std::stoll(digits), pos(i)});
        i = j;
        continue;
      }
      if (c == '?') {
        size_t j = i + 1;
        while (j < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[j]))) {
          ++j;
        }
        if (j == i + 1 || j - i > 4) {
          throw SyntaxError(pos(i), "expected hole number after '?'");
        }
        std::string digits(text.substr(i + 1, j - i - 1));
        line.tokens.push_back({TokKind::kHole, std::string(text.substr(i, j - i)),
                               std::stoll(digits), pos(i)});
        i = j;
        continue;
      }
      static const char* kTwoChar[] = {":=", "!=", "<=", ">="};
      bool matched = false;
      for (const char* sym : kTwoChar) {
        if (text.substr(i, 2) == sym) {
          line.tokens.push_back({TokKind::kSym, sym, 0, pos(i)});
          i += 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("+-*/()[],:=<>").find(c) != std::string_view::npos) {
        line.tokens.push_back({TokKind::kSym, std::string(1, c), 0, pos(i)});
        ++i;
        continue;
      }
      throw SyntaxError(pos(i), std::string("unexpected character '") + c +
                                    "'");
    }
    line.end = pos(text.size());
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

// Cursor over the tokens of one line.
class LineCursor {
 public:
  explicit LineCursor(const Line& line, size_t begin = 0,
                      std::optional<size_t> end = std::nullopt)
      : line_(line), i_(begin), end_(end.value_or(line.tokens.size())) {}

  bool AtEnd() const { return i_ >= end_; }
  const Token* Peek() const { return AtEnd() ? nullptr : &line_.tokens[i_]; }
  SourcePos Pos() const { return AtEnd() ? EndPos() : line_.tokens[i_].pos; }
  SourcePos EndPos() const {
    return end_ < line_.tokens.size() ? line_.tokens[end_].pos : line_.end;
  }

  bool PeekSym(std::string_view sym) const {
    const Token* t = Peek();
    return t && t->kind == TokKind::kSym && t->text == sym;
  }
  bool PeekWord(std::string_view word) const {
    const Token* t = Peek();
    return t && t->kind == TokKind::kIdent && t->text == word;
  }
  const Token& Next() {
    if (AtEnd()) throw SyntaxError(Pos(), "unexpected end of line");
    return line_.tokens[i_++];
  }
  void ExpectSym(std::string_view sym) {
    if (!PeekSym(sym)) {
      throw SyntaxError(Pos(), "expected '" + std::string(sym) + "'");
    }
    ++i_;
  }
  void ExpectWord(std::string_view word) {
    if (!PeekWord(word)) {
      throw SyntaxError(Pos(), "expected '" + std::string(word) + "'");
    }
    ++i_;
  }
  std::string ExpectIdent(std::string_view what) {
    const Token* t = Peek();
    if (!t || t->kind != TokKind::kIdent) {
      throw SyntaxError(Pos(), "expected " + std::string(what));
    }
    ++i_;
    return t->text;
  }
  void ExpectEnd() {
    if (!AtEnd()) {
      throw SyntaxError(Pos(), "unexpected '" + Peek()->text + "'");
    }
  }

 private:
  const Line& line_;
  size_t i_;
  size_t end_;
};

const std::set<std::string>& Keywords() {
  static const std::set<std::string> kWords = {
      "mechanism", "input", "arg", "adjacency", "hole", "begin", "end",
      "if", "then", "else", "while", "do", "append", "prepend", "break",
      "return", "skip", "true", "false", "and", "or", "not", "mod",
      "length", "Lap", "Exp", "LapVec", "ExpVec"};
  return kWords;
}

std::unique_ptr<Expr> MakeBinary(BinaryOp op, SourcePos pos,
                                 std::unique_ptr<Expr> lhs,
                                 std::unique_ptr<Expr> rhs) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::kBinary;
  e->binary_op = op;
  e->pos = pos;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

class ExprParser {
 public:
  explicit ExprParser(LineCursor& cur) : cur_(cur) {}

  std::unique_ptr<Expr> Parse() { return ParseOr(); }

 private:
  std::unique_ptr<Expr> ParseOr() {
    auto lhs = ParseAnd();
    while (cur_.PeekWord("or")) {
      SourcePos pos = cur_.Next().pos;
      lhs = MakeBinary(BinaryOp::kOr, pos, std::move(lhs), ParseAnd());
    }
    return lhs;
  }

  std::unique_ptr<Expr> ParseAnd() {
    auto lhs = ParseNot();
    while (cur_.PeekWord("and")) {
      SourcePos pos = cur_.Next().pos;
      lhs = MakeBinary(BinaryOp::kAnd, pos, std::move(lhs), ParseNot());
    }
    return lhs;
  }

  std::unique_ptr<Expr> ParseNot() {
    if (cur_.PeekWord("not")) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::kUnary;
      e->unary_op = UnaryOp::kNot;
      e->pos = cur_.Next().pos;
      e->lhs = ParseNot();
      return e;
    }
    return ParseComparison();
  }

  std::unique_ptr<Expr> ParseComparison() {
    auto lhs = ParseAdditive();
    static const std::map<std::string, BinaryOp> kOps = {
        {"=", BinaryOp::kEq}, {"!=", BinaryOp::kNe}, {"<", BinaryOp::kLt},
        {"<=", BinaryOp::kLe}, {">", BinaryOp::kGt}, {">=", BinaryOp::kGe}};
    const Token* t = cur_.Peek();
    if (t && t->kind == TokKind::kSym) {
      auto it = kOps.find(t->text);
      if (it != kOps.end()) {
        SourcePos pos = cur_.Next().pos;
        auto rhs = ParseAdditive();
        const Token* again = cur_.Peek();
        if (again && again->kind == TokKind::kSym && kOps.count(again->text)) {
          throw SyntaxError(again->pos, "comparisons do not chain");
        }
        return MakeBinary(it->second, pos, std::move(lhs), std::move(rhs));
      }
    }
    return lhs;
  }

  std::unique_ptr<Expr> ParseAdditive() {
    auto lhs = ParseMultiplicative();
    while (cur_.PeekSym("+") || cur_.PeekSym("-")) {
      const Token& t = cur_.Next();
      BinaryOp op = t.text == "+" ? BinaryOp::kAdd : BinaryOp::kSub;
      lhs = MakeBinary(op, t.pos, std::move(lhs), ParseMultiplicative());
    }
    return lhs;
  }

  std::unique_ptr<Expr> ParseMultiplicative() {
    auto lhs = ParseUnary();
    while (cur_.PeekSym("*") || cur_.PeekSym("/") || cur_.PeekWord("mod")) {
      const Token& t = cur_.Next();
      BinaryOp op = t.text == "*"   ? BinaryOp::kMul
                    : t.text == "/" ? BinaryOp::kDiv
                                    : BinaryOp::kMod;
      lhs = MakeBinary(op, t.pos, std::move(lhs), ParseUnary());
    }
    return lhs;
  }

  std::unique_ptr<Expr> ParseUnary() {
    if (cur_.PeekSym("-")) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::kUnary;
      e->unary_op = UnaryOp::kNeg;
      e->pos = cur_.Next().pos;
      e->lhs = ParseUnary();
      return e;
    }
    return ParsePostfix();
  }

  std::unique_ptr<Expr> ParsePostfix() {
    auto base = ParsePrimary();
    while (cur_.PeekSym("[")) {
      SourcePos pos = cur_.Next().pos;
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::kIndex;
      e->pos = pos;
      e->lhs = std::move(base);
      e->rhs = ParseOr();
      cur_.ExpectSym("]");
      base = std::move(e);
    }
    return base;
  }

  std::unique_ptr<Expr> ParsePrimary() {
    SourcePos pos = cur_.Pos();
    const Token& t = cur_.Next();
    auto e = std::make_unique<Expr>();
    e->pos = pos;
    if (t.kind == TokKind::kInt) {
      e->kind = ExprKind::kIntLit;
      e->int_value = t.value;
      return e;
    }
    if (t.kind == TokKind::kSym && t.text == "(") {
      auto inner = ParseOr();
      cur_.ExpectSym(")");
      return inner;
    }
    if (t.kind == TokKind::kSym && t.text == "[") {
      cur_.ExpectSym("]");
      e->kind = ExprKind::kEmptyList;
      return e;
    }
    if (t.kind == TokKind::kIdent) {
      if (t.text == "true" || t.text == "false") {
        e->kind = ExprKind::kBoolLit;
        e->bool_value = t.text == "true";
        return e;
      }
      if (t.text == "length") {
        cur_.ExpectSym("(");
        e->kind = ExprKind::kLength;
        e->lhs = ParseOr();
        cur_.ExpectSym(")");
        return e;
      }
      if (IsNoiseKeyword(t.text)) {
        throw SyntaxError(pos,
                          "noise may only appear as the last addend of an "
                          "assignment");
      }
      if (Keywords().count(t.text)) {
        throw SyntaxError(pos, "unexpected keyword '" + t.text + "'");
      }
      e->kind = ExprKind::kVar;
      e->name = t.text;
      return e;
    }
    if (t.kind == TokKind::kHole) {
      throw SyntaxError(pos, "hole outside a noise term");
    }
    throw SyntaxError(pos, "unexpected '" + t.text + "'");
  }

  LineCursor& cur_;
};

std::unique_ptr<Expr> ParseWholeExpr(LineCursor& cur) {
  if (cur.AtEnd()) throw SyntaxError(cur.Pos(), "expected an expression");
  ExprParser parser(cur);
  auto e = parser.Parse();
  return e;
}

struct HoleUse {
  std::string keyword;
  SourcePos pos;
};

class SketchParser {
 public:
  explicit SketchParser(std::string_view source)
      : source_(source), lines_(Tokenize(source)) {}

  MechanismSketch Parse() {
    ParseHeader();
    if (index_ >= lines_.size()) {
      throw SyntaxError(EndOfSource(), "missing 'begin'");
    }
    {
      LineCursor cur(lines_[index_]);
      cur.ExpectWord("begin");
      cur.ExpectEnd();
      ++index_;
    }
    std::string terminator;
    sketch_.body = ParseBlock(0, &terminator);
    if (terminator != "end") {
      throw SyntaxError(terminator_pos_, "'else' without 'if'");
    }
    if (index_ < lines_.size()) {
      throw SyntaxError(lines_[index_].tokens.front().pos,
                        "text after the final 'end'");
    }
    CheckHoles();
    Resolve();
    sketch_.source = std::string(source_);
    return std::move(sketch_);
  }

 private:
  SourcePos EndOfSource() const {
    return lines_.empty() ? SourcePos{1, 1} : lines_.back().end;
  }

  void ParseHeader() {
    bool have_name = false;
    bool have_input = false;
    bool have_adjacency = false;
    std::map<int, HoleDecl> holes;
    while (index_ < lines_.size()) {
      const Line& line = lines_[index_];
      LineCursor cur(line);
      if (cur.PeekWord("begin")) break;
      SourcePos pos = cur.Pos();
      std::string word = cur.ExpectIdent("a header keyword");
      if (word == "mechanism") {
        if (have_name) throw SyntaxError(pos, "duplicate 'mechanism'");
        sketch_.name = cur.ExpectIdent("a mechanism name");
        have_name = true;
      } else if (word == "input") {
        if (have_input) throw SyntaxError(pos, "duplicate 'input'");
        SourcePos name_pos = cur.Pos();
        std::string input = cur.ExpectIdent("an input name");
        CheckFreshName(input, name_pos);
        sketch_.input = input;
        have_input = true;
      } else if (word == "adjacency") {
        if (have_adjacency) throw SyntaxError(pos, "duplicate 'adjacency'");
        sketch_.adjacency = cur.ExpectIdent("an adjacency pattern name");
        have_adjacency = true;
      } else if (word == "arg") {
        ArgDecl arg;
        SourcePos name_pos = cur.Pos();
        arg.name = cur.ExpectIdent("an argument name");
        CheckFreshName(arg.name, name_pos);
        cur.ExpectSym(":");
        SourcePos type_pos = cur.Pos();
        std::string type = cur.ExpectIdent("an argument type");
        if (type == "size") {
          arg.type = ArgType::kSize;
        } else if (type == "epsilon") {
          arg.type = ArgType::kEpsilon;
        } else if (type == "int") {
          arg.type = ArgType::kInt;
        } else if (type == "posint") {
          arg.type = ArgType::kPosInt;
        } else {
          throw SyntaxError(type_pos, "unknown argument type '" + type + "'");
        }
        sketch_.args.push_back(arg);
      } else if (word == "hole") {
        const Token& hole = cur.Next();
        if (hole.kind != TokKind::kHole) {
          throw SyntaxError(hole.pos, "expected a hole such as ?1");
        }
        SourcePos fam_pos = cur.Pos();
        std::string family = cur.ExpectIdent("a noise family");
        if (family != "Lap" && family != "Exp") {
          throw SyntaxError(fam_pos, "noise family must be Lap or Exp");
        }
        int id = static_cast<int>(hole.value);
        if (holes.count(id)) {
          throw SyntaxError(hole.pos, "hole " + hole.text + " declared twice");
        }
        HoleDecl decl;
        decl.id = id - 1;
        decl.family = dist::ParseFamily(family);
        decl.pos = hole.pos;
        holes[id] = decl;
      } else {
        throw SyntaxError(pos, "unknown header keyword '" + word + "'");
      }
      cur.ExpectEnd();
      ++index_;
    }
    SourcePos at = index_ < lines_.size() ? lines_[index_].tokens.front().pos
                                          : EndOfSource();
    if (!have_name) throw SyntaxError(at, "missing 'mechanism' declaration");
    if (!have_input) throw SyntaxError(at, "missing 'input' declaration");
    if (!have_adjacency) throw SyntaxError(at, "missing 'adjacency'");
    if (holes.empty()) throw SyntaxError(at, "a sketch needs at least one hole");
    if (holes.size() > static_cast<size_t>(kMaxHoles)) {
      throw SyntaxError(at, "at most " + std::to_string(kMaxHoles) +
                                " holes are supported");
    }
    int expected = 1;
    for (auto& [id, decl] : holes) {
      if (id != expected) {
        throw SyntaxError(decl.pos, "holes must be numbered ?1..?n");
      }
      sketch_.holes.push_back(decl);
      ++expected;
    }
    int sizes = 0;
    int epsilons = 0;
    for (const auto& arg : sketch_.args) {
      sizes += arg.type == ArgType::kSize;
      epsilons += arg.type == ArgType::kEpsilon;
    }
    if (sizes != 1) {
      throw SyntaxError(at, "exactly one argument of type size is required");
    }
    if (epsilons != 1) {
      throw SyntaxError(at,
                        "exactly one argument of type epsilon is required");
    }
  }

  void CheckFreshName(const std::string& name, SourcePos pos) {
    if (Keywords().count(name)) {
      throw SyntaxError(pos, "'" + name + "' is a keyword");
    }
    if (name == sketch_.input || sketch_.FindArg(name)) {
      throw SyntaxError(pos, "'" + name + "' declared twice");
    }
  }

  std::vector<Command> ParseBlock(int loop_depth, std::string* terminator) {
    std::vector<Command> block;
    while (true) {
      if (index_ >= lines_.size()) {
        throw SyntaxError(EndOfSource(), "missing 'end'");
      }
      const Line& line = lines_[index_];
      LineCursor cur(line);
      if (cur.PeekWord("end") || cur.PeekWord("else")) {
        terminator_pos_ = cur.Pos();
        *terminator = cur.Next().text;
        cur.ExpectEnd();
        ++index_;
        return block;
      }
      block.push_back(ParseStatement(loop_depth));
    }
  }

  Command ParseStatement(int loop_depth) {
    const Line& line = lines_[index_];
    LineCursor cur(line);
    Command cmd;
    cmd.pos = cur.Pos();
    const Token& first = cur.Next();
    ++index_;
    if (first.kind != TokKind::kIdent) {
      throw SyntaxError(first.pos, "expected a statement");
    }
    const std::string& word = first.text;
    if (word == "skip") {
      cmd.kind = CommandKind::kSkip;
      cur.ExpectEnd();
    } else if (word == "break") {
      if (loop_depth == 0) {
        throw SyntaxError(first.pos, "'break' outside a loop");
      }
      cmd.kind = CommandKind::kBreak;
      cur.ExpectEnd();
    } else if (word == "return") {
      cmd.kind = CommandKind::kReturn;
      cmd.expr = ParseWholeExpr(cur);
      cur.ExpectEnd();
    } else if (word == "if") {
      cmd.kind = CommandKind::kIf;
      cmd.expr = ParseWholeExpr(cur);
      cur.ExpectWord("then");
      cur.ExpectEnd();
      std::string terminator;
      cmd.then_body = ParseBlock(loop_depth, &terminator);
      if (terminator == "else") {
        cmd.else_body = ParseBlock(loop_depth, &terminator);
        if (terminator != "end") {
          throw SyntaxError(terminator_pos_, "duplicate 'else'");
        }
      }
    } else if (word == "while") {
      cmd.kind = CommandKind::kWhile;
      cmd.expr = ParseWholeExpr(cur);
      cur.ExpectWord("do");
      cur.ExpectEnd();
      std::string terminator;
      ++loop_nesting_;
      cmd.then_body = ParseBlock(loop_depth + 1, &terminator);
      --loop_nesting_;
      if (terminator != "end") {
        throw SyntaxError(terminator_pos_, "'else' without 'if'");
      }
    } else if (word == "append" || word == "prepend") {
      cmd.kind = word == "append" ? CommandKind::kAppend
                                  : CommandKind::kPrepend;
      cur.ExpectSym("(");
      cmd.target = cur.ExpectIdent("a list variable");
      cur.ExpectSym(",");
      cmd.expr = ParseWholeExpr(cur);
      cur.ExpectSym(")");
      cur.ExpectEnd();
    } else if (Keywords().count(word)) {
      throw SyntaxError(first.pos, "unexpected keyword '" + word + "'");
    } else {
      cmd.target = word;
      cur.ExpectSym(":=");
      ParseAssignment(line, cur, &cmd);
    }
    return cmd;
  }

  // Recognizes `x := e + Noise(?k)` and `x := Noise(?k)`; anything else is a
  // plain assignment.
  void ParseAssignment(const Line& line, LineCursor& cur, Command* cmd) {
    const auto& toks = line.tokens;
    size_t n = toks.size();
    bool noisy = n >= 6 && toks[n - 4].kind == TokKind::kIdent &&
                 IsNoiseKeyword(toks[n - 4].text) &&
                 toks[n - 3].kind == TokKind::kSym && toks[n - 3].text == "(" &&
                 toks[n - 2].kind == TokKind::kHole &&
                 toks[n - 1].kind == TokKind::kSym && toks[n - 1].text == ")";
    if (!noisy) {
      cmd->kind = CommandKind::kAssign;
      cmd->expr = ParseWholeExpr(cur);
      cur.ExpectEnd();
      return;
    }
    const Token& kw = toks[n - 4];
    const Token& hole = toks[n - 2];
    cmd->kind = CommandKind::kNoisyAssign;
    cmd->vector_noise = kw.text == "LapVec" || kw.text == "ExpVec";
    cmd->hole = static_cast<int>(hole.value) - 1;
    // toks[0] target, toks[1] ':='.
    if (n == 6) {
      cmd->expr = nullptr;
    } else {
      const Token& plus = toks[n - 5];
      if (plus.kind != TokKind::kSym || plus.text != "+") {
        throw SyntaxError(kw.pos,
                          "noise must be added with '+' as the last addend");
      }
      LineCursor base(line, 2, n - 5);
      cmd->expr = ParseWholeExpr(base);
      base.ExpectEnd();
    }
    std::string family = cmd->vector_noise ? kw.text.substr(0, 3) : kw.text;
    if (cmd->hole < 0 ||
        cmd->hole >= static_cast<int>(sketch_.holes.size())) {
      throw ScopeError(hole.pos, "undeclared hole " + hole.text);
    }
    HoleDecl& decl = sketch_.holes[cmd->hole];
    if (hole_uses_.count(cmd->hole)) {
      throw ScopeError(hole.pos, "hole " + hole.text + " referenced twice");
    }
    hole_uses_[cmd->hole] = {kw.text, hole.pos};
    if (dist::FamilyName(decl.family) != family) {
      throw TypeError(kw.pos, "hole " + hole.text + " is declared " +
                                  std::string(dist::FamilyName(decl.family)) +
                                  " but used with " + kw.text);
    }
    decl.vector_noise = cmd->vector_noise;
    decl.in_loop = loop_nesting_ > 0;
  }

  void CheckHoles() {
    for (const auto& hole : sketch_.holes) {
      if (!hole_uses_.count(hole.id)) {
        throw ScopeError(hole.pos,
                         "hole ?" + std::to_string(hole.id + 1) +
                             " is never used");
      }
    }
  }

  // Name resolution and flow-insensitive typing.
  void Resolve() {
    std::map<std::string, Type> types;
    types[sketch_.input] = Type::kList;
    sketch_.slot_names.push_back(sketch_.input);
    for (const auto& arg : sketch_.args) {
      if (arg.type == ArgType::kEpsilon) continue;
      types[arg.name] = Type::kInt;
      sketch_.slot_names.push_back(arg.name);
    }
    fixed_ = types;
    // Discover local types until nothing changes.
    bool changed = true;
    while (changed) {
      changed = false;
      InferBlock(sketch_.body, &types, &changed);
    }
    for (size_t i = 0; i < sketch_.slot_names.size(); ++i) {
      slots_[sketch_.slot_names[i]] = static_cast<int>(i);
    }
    std::optional<Type> output;
    CheckBlock(sketch_.body, types, &output);
    if (!output) {
      throw ScopeError(EndOfSource(), "the body never returns a value");
    }
    sketch_.output_type = *output;
  }

  // Returns the type of \p e if all variables it mentions are typed.
  std::optional<Type> Peek(const Expr& e,
                           const std::map<std::string, Type>& types) {
    switch (e.kind) {
      case ExprKind::kVar: {
        auto it = types.find(e.name);
        if (it == types.end()) return std::nullopt;
        return it->second;
      }
      case ExprKind::kIntLit:
        return Type::kInt;
      case ExprKind::kBoolLit:
        return Type::kBool;
      case ExprKind::kEmptyList:
        return Type::kList;
      case ExprKind::kUnary:
        return e.unary_op == UnaryOp::kNeg ? Type::kInt : Type::kBool;
      case ExprKind::kLength:
      case ExprKind::kIndex:
        return Type::kInt;
      case ExprKind::kBinary:
        switch (e.binary_op) {
          case BinaryOp::kAdd:
          case BinaryOp::kSub:
          case BinaryOp::kMul:
          case BinaryOp::kDiv:
          case BinaryOp::kMod:
            return Type::kInt;
          default:
            return Type::kBool;
        }
    }
    return std::nullopt;
  }

  void Define(const Command& cmd, Type type,
              std::map<std::string, Type>* types, bool* changed) {
    if (fixed_.count(cmd.target)) {
      throw TypeError(cmd.pos, "cannot assign to input or argument '" +
                                   cmd.target + "'");
    }
    auto it = types->find(cmd.target);
    if (it == types->end()) {
      (*types)[cmd.target] = type;
      *changed = true;
    } else if (it->second != type) {
      throw TypeError(cmd.pos, "variable '" + cmd.target + "' holds " +
                                   std::string(TypeName(it->second)) +
                                   " but is assigned " +
                                   std::string(TypeName(type)));
    }
  }

  void InferBlock(const std::vector<Command>& block,
                  std::map<std::string, Type>* types, bool* changed) {
    for (const auto& cmd : block) {
      switch (cmd.kind) {
        case CommandKind::kAssign:
          if (auto t = Peek(*cmd.expr, *types)) {
            Define(cmd, *t, types, changed);
          }
          NoteLocal(cmd.target);
          break;
        case CommandKind::kNoisyAssign:
          Define(cmd, cmd.vector_noise ? Type::kList : Type::kInt, types,
                 changed);
          NoteLocal(cmd.target);
          break;
        case CommandKind::kIf:
        case CommandKind::kWhile:
          InferBlock(cmd.then_body, types, changed);
          InferBlock(cmd.else_body, types, changed);
          break;
        default:
          break;
      }
    }
  }

  void NoteLocal(const std::string& name) {
    if (fixed_.count(name)) return;
    for (const auto& s : sketch_.slot_names) {
      if (s == name) return;
    }
    sketch_.slot_names.push_back(name);
  }

  Type CheckExpr(Expr& e, const std::map<std::string, Type>& types) {
    switch (e.kind) {
      case ExprKind::kVar: {
        if (const ArgDecl* arg = sketch_.FindArg(e.name);
            arg && arg->type == ArgType::kEpsilon) {
          throw TypeError(e.pos, "the epsilon argument '" + e.name +
                                     "' may only appear in noise scales");
        }
        auto it = types.find(e.name);
        if (it == types.end()) {
          throw ScopeError(e.pos, "undeclared symbol '" + e.name + "'");
        }
        e.slot = slots_.at(e.name);
        e.type = it->second;
        return e.type;
      }
      case ExprKind::kIntLit:
        return e.type = Type::kInt;
      case ExprKind::kBoolLit:
        return e.type = Type::kBool;
      case ExprKind::kEmptyList:
        return e.type = Type::kList;
      case ExprKind::kUnary: {
        Type inner = CheckExpr(*e.lhs, types);
        Type want = e.unary_op == UnaryOp::kNeg ? Type::kInt : Type::kBool;
        Expect(inner, want, e.lhs->pos);
        return e.type = want;
      }
      case ExprKind::kLength:
        Expect(CheckExpr(*e.lhs, types), Type::kList, e.lhs->pos);
        return e.type = Type::kInt;
      case ExprKind::kIndex:
        Expect(CheckExpr(*e.lhs, types), Type::kList, e.lhs->pos);
        Expect(CheckExpr(*e.rhs, types), Type::kInt, e.rhs->pos);
        return e.type = Type::kInt;
      case ExprKind::kBinary: {
        Type l = CheckExpr(*e.lhs, types);
        Type r = CheckExpr(*e.rhs, types);
        switch (e.binary_op) {
          case BinaryOp::kAdd:
          case BinaryOp::kSub:
          case BinaryOp::kMul:
          case BinaryOp::kDiv:
          case BinaryOp::kMod:
            Expect(l, Type::kInt, e.lhs->pos);
            Expect(r, Type::kInt, e.rhs->pos);
            return e.type = Type::kInt;
          case BinaryOp::kLt:
          case BinaryOp::kLe:
          case BinaryOp::kGt:
          case BinaryOp::kGe:
            Expect(l, Type::kInt, e.lhs->pos);
            Expect(r, Type::kInt, e.rhs->pos);
            return e.type = Type::kBool;
          case BinaryOp::kEq:
          case BinaryOp::kNe:
            if (l == Type::kList) {
              throw TypeError(e.pos, "lists cannot be compared");
            }
            Expect(r, l, e.rhs->pos);
            return e.type = Type::kBool;
          case BinaryOp::kAnd:
          case BinaryOp::kOr:
            Expect(l, Type::kBool, e.lhs->pos);
            Expect(r, Type::kBool, e.rhs->pos);
            return e.type = Type::kBool;
        }
      }
    }
    return e.type;
  }

  static void Expect(Type got, Type want, SourcePos pos) {
    if (got != want) {
      throw TypeError(pos, "expected " + std::string(TypeName(want)) +
                               ", found " + std::string(TypeName(got)));
    }
  }

  void CheckBlock(std::vector<Command>& block,
                  const std::map<std::string, Type>& types,
                  std::optional<Type>* output) {
    for (auto& cmd : block) {
      switch (cmd.kind) {
        case CommandKind::kSkip:
        case CommandKind::kBreak:
          break;
        case CommandKind::kAssign: {
          Type t = CheckExpr(*cmd.expr, types);
          Expect(t, types.at(cmd.target), cmd.expr->pos);
          cmd.slot = slots_.at(cmd.target);
          break;
        }
        case CommandKind::kNoisyAssign: {
          Type want = cmd.vector_noise ? Type::kList : Type::kInt;
          if (cmd.expr) {
            Expect(CheckExpr(*cmd.expr, types), want, cmd.expr->pos);
          } else if (cmd.vector_noise) {
            throw TypeError(cmd.pos, "vector noise needs a list to perturb");
          }
          cmd.slot = slots_.at(cmd.target);
          break;
        }
        case CommandKind::kIf:
        case CommandKind::kWhile:
          Expect(CheckExpr(*cmd.expr, types), Type::kBool, cmd.expr->pos);
          CheckBlock(cmd.then_body, types, output);
          CheckBlock(cmd.else_body, types, output);
          break;
        case CommandKind::kAppend:
        case CommandKind::kPrepend: {
          if (fixed_.count(cmd.target)) {
            throw TypeError(cmd.pos, "cannot modify input or argument '" +
                                         cmd.target + "'");
          }
          auto it = types.find(cmd.target);
          if (it == types.end()) {
            throw ScopeError(cmd.pos,
                             "undeclared symbol '" + cmd.target + "'");
          }
          Expect(it->second, Type::kList, cmd.pos);
          Expect(CheckExpr(*cmd.expr, types), Type::kInt, cmd.expr->pos);
          cmd.slot = slots_.at(cmd.target);
          break;
        }
        case CommandKind::kReturn: {
          Type t = CheckExpr(*cmd.expr, types);
          if (*output && **output != t) {
            throw TypeError(cmd.expr->pos,
                            "returns " + std::string(TypeName(t)) +
                                " but an earlier return gives " +
                                std::string(TypeName(**output)));
          }
          *output = t;
          break;
        }
      }
    }
  }

  std::string_view source_;
  std::vector<Line> lines_;
  size_t index_ = 0;
  int loop_nesting_ = 0;
  SourcePos terminator_pos_;
  MechanismSketch sketch_;
  std::map<int, HoleUse> hole_uses_;
  std::map<std::string, Type> fixed_;
  std::map<std::string, int> slots_;
};

}  // namespace

MechanismSketch ParseSketch(std::string_view source) {
  return SketchParser(source).Parse();
}

MechanismSketch LoadSketch(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read sketch file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseSketch(buffer.str());
}

}  // namespace dpsynth::lang
