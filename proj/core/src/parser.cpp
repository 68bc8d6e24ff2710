// Copyright 2026 The gdpc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "gdpc/error.hpp"
#include "gdpc/program.hpp"

namespace gdpc {
namespace {

enum class Tok {
  kIdent, kNumber, kSemi, kComma, kLBracket, kRBracket, kLParen, kRParen,
  kAssign, kLe, kGe, kLt, kGt, kPlus, kMinus, kStar, kSlash, kCaret, kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int col = 1;
};

[[noreturn]] void SyntaxError(int line, int col, const std::string& msg) {
  throw Error(ErrorCode::kSyntax, fmt::format("{}:{}: {}", line, col, msg));
}

std::vector<Token> Lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::kEnd, "", 0.0, line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      t.kind = Tok::kIdent;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      t.kind = Tok::kNumber;
      t.text = std::string(src.substr(i, j - i));
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
        SyntaxError(line, col, "malformed number '" + t.text + "'");
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "<=" || two == ">=") {
      t.kind = two == "<=" ? Tok::kLe : Tok::kGe;
      t.text = std::string(two);
      advance(2);
      out.push_back(std::move(t));
      continue;
    }
    if (two == "<<" || two == ">>" || two == "==" || two == "=<" || two == "=>" ||
        two == "!=" || two == "<>") {
      SyntaxError(line, col, "malformed token '" + std::string(two) + "'");
    }
    switch (c) {
      case ';': t.kind = Tok::kSemi; break;
      case ',': t.kind = Tok::kComma; break;
      case '[': t.kind = Tok::kLBracket; break;
      case ']': t.kind = Tok::kRBracket; break;
      case '(': t.kind = Tok::kLParen; break;
      case ')': t.kind = Tok::kRParen; break;
      case '=': t.kind = Tok::kAssign; break;
      case '<': t.kind = Tok::kLt; break;
      case '>': t.kind = Tok::kGt; break;
      case '+': t.kind = Tok::kPlus; break;
      case '-': t.kind = Tok::kMinus; break;
      case '*': t.kind = Tok::kStar; break;
      case '/': t.kind = Tok::kSlash; break;
      case '^': t.kind = Tok::kCaret; break;
      default:
        SyntaxError(line, col, fmt::format("unexpected character '{}'", c));
    }
    t.text = std::string(1, c);
    advance(1);
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::kEnd, "<end of input>", 0.0, line, col});
  return out;
}

const std::set<std::string, std::less<>> kKeywords = {
    "var", "in", "param", "if", "then", "else", "end", "and", "or", "not",
    "disaggregate", "block", "inf"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  IfElseProgram Run() {
    while (!AtEnd()) {
      if (IsKeyword("var")) {
        ParseDecl();
      } else if (IsKeyword("param")) {
        ParseParam();
      } else {
        program_.statements.push_back(ParseStatement());
      }
    }
    return std::move(program_);
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool AtEnd() const { return Peek().kind == Tok::kEnd; }
  bool IsKeyword(std::string_view kw, std::size_t ahead = 0) const {
    return Peek(ahead).kind == Tok::kIdent && Peek(ahead).text == kw;
  }
  const Token& Next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void Fail(const std::string& msg) const {
    SyntaxError(Peek().line, Peek().col, msg + ", found '" + Peek().text + "'");
  }

  const Token& Expect(Tok kind, std::string_view what) {
    if (Peek().kind != kind) Fail(fmt::format("expected {}", what));
    return Next();
  }

  void ExpectKeyword(std::string_view kw) {
    if (!IsKeyword(kw)) Fail(fmt::format("expected '{}'", kw));
    Next();
  }

  std::string ExpectIdent() {
    const Token& t = Expect(Tok::kIdent, "identifier");
    if (kKeywords.count(t.text)) {
      SyntaxError(t.line, t.col, "keyword '" + t.text + "' used as identifier");
    }
    return t.text;
  }

  double SignedNumber() {
    double sign = 1.0;
    if (Peek().kind == Tok::kMinus) {
      Next();
      sign = -1.0;
    } else if (Peek().kind == Tok::kPlus) {
      Next();
    }
    if (IsKeyword("inf")) {
      Next();
      return sign * kInf;
    }
    return sign * Expect(Tok::kNumber, "number").number;
  }

  void Declare(const Token& at, const std::string& name) {
    if (declared_.count(name)) {
      throw Error(ErrorCode::kRedeclared,
                  fmt::format("{}:{}: '{}' is already declared", at.line, at.col, name));
    }
    declared_.insert(name);
  }

  void ParseDecl() {
    ExpectKeyword("var");
    const Token at = Peek();
    std::string name = ExpectIdent();
    ExpectKeyword("in");
    Expect(Tok::kLBracket, "'['");
    const double lb = SignedNumber();
    Expect(Tok::kComma, "','");
    const double ub = SignedNumber();
    Expect(Tok::kRBracket, "']'");
    Expect(Tok::kSemi, "';'");
    if (lb > ub) SyntaxError(at.line, at.col, "empty bounds for '" + name + "'");
    Declare(at, name);
    program_.decls.push_back(Variable::Continuous(name, lb, ub));
  }

  void ParseParam() {
    ExpectKeyword("param");
    const Token at = Peek();
    std::string name = ExpectIdent();
    Expect(Tok::kAssign, "'='");
    const double v = SignedNumber();
    Expect(Tok::kSemi, "';'");
    if (!std::isfinite(v)) SyntaxError(at.line, at.col, "parameter must be finite");
    Declare(at, name);
    params_.insert(name);
    program_.params.emplace_back(name, v);
  }

  Statement ParseStatement() {
    if (IsKeyword("if")) return ParseIf({});
    if (IsKeyword("disaggregate")) {
      Next();
      std::vector<std::string> vars;
      do {
        const Token at = Peek();
        std::string v = ExpectIdent();
        RequireVariable(at, v);
        vars.push_back(v);
      } while (Peek().kind == Tok::kComma && (Next(), true));
      ExpectKeyword("in");
      ExpectKeyword("block");
      Expect(Tok::kSemi, "';'");
      if (!IsKeyword("if")) Fail("'disaggregate ... in block;' must precede an if block");
      return ParseIf(std::move(vars));
    }
    const Token at = Peek();
    std::string target = ExpectIdent();
    if (params_.count(target)) {
      SyntaxError(at.line, at.col, "cannot assign to parameter '" + target + "'");
    }
    RequireVariable(at, target);
    Expect(Tok::kAssign, "'='");
    Expr rhs = ParseExpr();
    Expect(Tok::kSemi, "';'");
    return Statement::Assign(std::move(target), std::move(rhs), at.line);
  }

  std::vector<Statement> ParseBody() {
    std::vector<Statement> body;
    while (!AtEnd() && !IsKeyword("else") && !IsKeyword("end")) {
      if (IsKeyword("var") || IsKeyword("param")) Fail("declarations are only allowed at top level");
      body.push_back(ParseStatement());
    }
    return body;
  }

  Statement ParseIf(std::vector<std::string> disagg) {
    const int line = Peek().line;
    ExpectKeyword("if");
    IfBlock blk;
    blk.disaggregate = std::move(disagg);
    Branch first;
    first.line = line;
    first.condition = ParseCondition();
    ExpectKeyword("then");
    first.body = ParseBody();
    blk.branches.push_back(std::move(first));
    while (IsKeyword("else")) {
      const int else_line = Peek().line;
      Next();
      if (IsKeyword("if")) {
        Next();
        Branch b;
        b.line = else_line;
        b.condition = ParseCondition();
        ExpectKeyword("then");
        b.body = ParseBody();
        blk.branches.push_back(std::move(b));
        continue;
      }
      blk.has_else = true;
      blk.else_line = else_line;
      blk.else_body = ParseBody();
      break;
    }
    ExpectKeyword("end");
    return Statement::If(std::move(blk), line);
  }

  // cond := and ('or' and)*
  Condition ParseCondition() {
    std::vector<Condition> parts{ParseAnd()};
    while (IsKeyword("or")) {
      Next();
      parts.push_back(ParseAnd());
    }
    return parts.size() == 1 ? std::move(parts[0]) : Condition::Or(std::move(parts));
  }

  Condition ParseAnd() {
    std::vector<Condition> parts{ParseNot()};
    while (IsKeyword("and")) {
      Next();
      parts.push_back(ParseNot());
    }
    return parts.size() == 1 ? std::move(parts[0]) : Condition::And(std::move(parts));
  }

  Condition ParseNot() {
    if (IsKeyword("not")) {
      Next();
      return Condition::Not(ParseNot());
    }
    if (Peek().kind == Tok::kLParen) {
      // Either a parenthesized condition or an expression starting with '('.
      const std::size_t save = pos_;
      const std::size_t nwarn = program_.warnings.size();
      try {
        Next();
        Condition inner = ParseCondition();
        if (Peek().kind == Tok::kRParen) {
          Next();
          const Tok k = Peek().kind;
          if (k != Tok::kLe && k != Tok::kGe && k != Tok::kLt && k != Tok::kGt &&
              k != Tok::kPlus && k != Tok::kMinus && k != Tok::kStar && k != Tok::kSlash &&
              k != Tok::kCaret) {
            return inner;
          }
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSyntax) throw;
      }
      pos_ = save;
      program_.warnings.resize(nwarn);
    }
    return Condition::Compare(ParseComparison());
  }

  Comparison ParseComparison() {
    Comparison c;
    c.lhs = ParseExpr();
    const Token& op = Peek();
    switch (op.kind) {
      case Tok::kLe: c.relation = Relation::kLe; break;
      case Tok::kGe: c.relation = Relation::kGe; break;
      case Tok::kLt:
      case Tok::kGt:
        c.relation = op.kind == Tok::kLt ? Relation::kLe : Relation::kGe;
        program_.warnings.push_back(
            {"D_STRICT_COERCED", Diagnostic::Severity::kWarning,
             fmt::format("strict '{}' treated as '{}='", op.text, op.text), op.line});
        break;
      case Tok::kAssign:
        SyntaxError(op.line, op.col, "equality is not allowed in a testing condition");
      default:
        Fail("expected comparison operator");
    }
    Next();
    c.rhs = ParseExpr();
    return c;
  }

  Expr ParseExpr() {
    Expr e = ParseTerm();
    while (Peek().kind == Tok::kPlus || Peek().kind == Tok::kMinus) {
      const bool plus = Next().kind == Tok::kPlus;
      Expr rhs = ParseTerm();
      e = plus ? Expr::Add(e, rhs) : Expr::Sub(e, rhs);
    }
    return e;
  }

  Expr ParseTerm() {
    Expr e = ParseUnary();
    while (Peek().kind == Tok::kStar || Peek().kind == Tok::kSlash) {
      const bool mul = Next().kind == Tok::kStar;
      Expr rhs = ParseUnary();
      e = mul ? Expr::Mul(e, rhs) : Expr::Div(e, rhs);
    }
    return e;
  }

  Expr ParseUnary() {
    if (Peek().kind == Tok::kMinus) {
      Next();
      return Expr::Neg(ParseUnary());
    }
    return ParsePower();
  }

  Expr ParsePower() {
    Expr base = ParsePrimary();
    if (Peek().kind != Tok::kCaret) return base;
    const Token at = Next();
    Expr exponent = ParseUnary();
    auto folded = ConstantValue(exponent);
    if (!folded) SyntaxError(at.line, at.col, "exponent must be a numeric constant");
    return Expr::Pow(base, Expr::Constant(*folded));
  }

  // Folds a parameter-only expression to a number.
  std::optional<double> ConstantValue(const Expr& e) const {
    Binding b;
    for (const auto& [n, v] : program_.params) b[n] = v;
    for (const auto& v : variables_of(e)) {
      if (!params_.count(v)) return std::nullopt;
    }
    try {
      return eval_expr(e, b);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  Expr ParsePrimary() {
    const Token& t = Peek();
    if (t.kind == Tok::kNumber) {
      Next();
      return Expr::Constant(t.number);
    }
    if (t.kind == Tok::kLParen) {
      Next();
      Expr e = ParseExpr();
      Expect(Tok::kRParen, "')'");
      return e;
    }
    if (t.kind == Tok::kIdent) {
      const Token at = t;
      if (kKeywords.count(at.text)) Fail("expected expression");
      Next();
      if (Peek().kind == Tok::kLParen) {
        auto fn = FnFromName(at.text);
        if (!fn) {
          throw Error(ErrorCode::kUndeclared,
                      fmt::format("{}:{}: unknown function '{}'", at.line, at.col, at.text));
        }
        Next();
        Expr arg = ParseExpr();
        Expect(Tok::kRParen, "')'");
        return Expr::Call(*fn, arg);
      }
      if (!declared_.count(at.text)) {
        throw Error(ErrorCode::kUndeclared,
                    fmt::format("{}:{}: '{}' is not declared", at.line, at.col, at.text));
      }
      return Expr::Var(at.text);
    }
    Fail("expected expression");
  }

  void RequireVariable(const Token& at, const std::string& name) const {
    if (!declared_.count(name) || params_.count(name)) {
      throw Error(ErrorCode::kUndeclared,
                  fmt::format("{}:{}: '{}' is not a declared variable", at.line, at.col, name));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  IfElseProgram program_;
  std::set<std::string, std::less<>> declared_;
  std::set<std::string, std::less<>> params_;
};

}  // namespace

IfElseProgram parse_program(std::string_view text) {
  return Parser(Lex(text)).Run();
}

}  // namespace gdpc
