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

#include "gdpc/expr.hpp"

#include <charconv>
#include <cmath>
#include <system_error>
#include <utility>

#include "gdpc/error.hpp"

namespace gdpc {

struct Expr::Node {
  Op op = Op::kConst;
  double value = 0.0;
  std::string name;
  Fn fn = Fn::kExp;
  std::vector<Expr> args;
};

std::string_view to_string(Fn fn) {
  switch (fn) {
    case Fn::kExp: return "exp";
    case Fn::kLog: return "log";
    case Fn::kSqrt: return "sqrt";
    case Fn::kSin: return "sin";
    case Fn::kCos: return "cos";
    case Fn::kAbs: return "abs";
  }
  return "?";
}

std::optional<Fn> FnFromName(std::string_view name) {
  for (Fn fn : {Fn::kExp, Fn::kLog, Fn::kSqrt, Fn::kSin, Fn::kCos, Fn::kAbs}) {
    if (to_string(fn) == name) return fn;
  }
  return std::nullopt;
}

Expr::Expr() : Expr(Constant(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::Make(Op op, std::vector<Expr> args) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->args = std::move(args);
  return Expr(std::move(node));
}

Expr Expr::Constant(double value) {
  auto node = std::make_shared<Node>();
  node->op = Op::kConst;
  node->value = value;
  return Expr(std::move(node));
}

Expr Expr::Var(std::string name) {
  auto node = std::make_shared<Node>();
  node->op = Op::kVar;
  node->name = std::move(name);
  return Expr(std::move(node));
}

Expr Expr::Neg(Expr a) { return Make(Op::kNeg, {std::move(a)}); }
Expr Expr::Add(Expr a, Expr b) { return Make(Op::kAdd, {std::move(a), std::move(b)}); }
Expr Expr::Sub(Expr a, Expr b) { return Make(Op::kSub, {std::move(a), std::move(b)}); }
Expr Expr::Mul(Expr a, Expr b) { return Make(Op::kMul, {std::move(a), std::move(b)}); }
Expr Expr::Div(Expr a, Expr b) { return Make(Op::kDiv, {std::move(a), std::move(b)}); }

Expr Expr::Pow(Expr base, Expr exponent) {
  if (!exponent.is_const()) {
    throw Error(ErrorCode::kInvalidModel,
                "exponent must be a numeric constant, got " + to_string(exponent));
  }
  return Make(Op::kPow, {std::move(base), std::move(exponent)});
}

Expr Expr::Call(Fn fn, Expr arg) {
  auto node = std::make_shared<Node>();
  node->op = Op::kCall;
  node->fn = fn;
  node->args = {std::move(arg)};
  return Expr(std::move(node));
}

Op Expr::op() const { return node_->op; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Fn Expr::fn() const { return node_->fn; }
std::size_t Expr::arity() const { return node_->args.size(); }
const Expr& Expr::arg(std::size_t i) const { return node_->args.at(i); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.arity() != b.arity()) return false;
  switch (a.op()) {
    case Op::kConst:
      // Bitwise-equal constants; -0.0 and 0.0 are treated as equal.
      return a.value() == b.value();
    case Op::kVar:
      return a.name() == b.name();
    case Op::kCall:
      if (a.fn() != b.fn()) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a.arg(i) != b.arg(i)) return false;
  }
  return true;
}

Expr operator+(Expr a, Expr b) { return Expr::Add(std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::Sub(std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::Mul(std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::Div(std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::Neg(std::move(a)); }

namespace {

[[noreturn]] void DomainError(const std::string& what) {
  throw Error(ErrorCode::kDomain, what);
}

double EvalPow(double base, double exponent) {
  if (exponent == std::floor(exponent)) {
    if (base == 0.0 && exponent < 0) DomainError("zero raised to a negative power");
    return std::pow(base, exponent);
  }
  if (base < 0) DomainError("negative base with fractional exponent");
  if (base == 0.0 && exponent < 0) DomainError("zero raised to a negative power");
  return std::pow(base, exponent);
}

}  // namespace

double eval_expr(const Expr& e, const Binding& binding) {
  switch (e.op()) {
    case Op::kConst:
      return e.value();
    case Op::kVar: {
      auto it = binding.find(e.name());
      if (it == binding.end()) {
        throw Error(ErrorCode::kInvalidModel, "unbound variable '" + e.name() + "'");
      }
      return it->second;
    }
    case Op::kNeg:
      return -eval_expr(e.arg(0), binding);
    case Op::kAdd:
      return eval_expr(e.arg(0), binding) + eval_expr(e.arg(1), binding);
    case Op::kSub:
      return eval_expr(e.arg(0), binding) - eval_expr(e.arg(1), binding);
    case Op::kMul:
      return eval_expr(e.arg(0), binding) * eval_expr(e.arg(1), binding);
    case Op::kDiv: {
      double den = eval_expr(e.arg(1), binding);
      if (den == 0.0) DomainError("division by zero in " + to_string(e));
      return eval_expr(e.arg(0), binding) / den;
    }
    case Op::kPow:
      return EvalPow(eval_expr(e.arg(0), binding), e.arg(1).value());
    case Op::kCall: {
      double x = eval_expr(e.arg(0), binding);
      switch (e.fn()) {
        case Fn::kExp: return std::exp(x);
        case Fn::kLog:
          if (x <= 0) DomainError("log of nonpositive value in " + to_string(e));
          return std::log(x);
        case Fn::kSqrt:
          if (x < 0) DomainError("sqrt of negative value in " + to_string(e));
          return std::sqrt(x);
        case Fn::kSin: return std::sin(x);
        case Fn::kCos: return std::cos(x);
        case Fn::kAbs: return std::fabs(x);
      }
    }
  }
  return 0.0;
}

namespace {

void CollectVars(const Expr& e, std::set<std::string>& out) {
  if (e.is_var()) {
    out.insert(e.name());
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i) CollectVars(e.arg(i), out);
}

Expr Rebuild(const Expr& e, std::vector<Expr> args) {
  switch (e.op()) {
    case Op::kNeg: return Expr::Neg(args[0]);
    case Op::kAdd: return Expr::Add(args[0], args[1]);
    case Op::kSub: return Expr::Sub(args[0], args[1]);
    case Op::kMul: return Expr::Mul(args[0], args[1]);
    case Op::kDiv: return Expr::Div(args[0], args[1]);
    case Op::kPow: return Expr::Pow(args[0], args[1]);
    case Op::kCall: return Expr::Call(e.fn(), args[0]);
    default: return e;
  }
}

}  // namespace

std::set<std::string> variables_of(const Expr& e) {
  std::set<std::string> out;
  CollectVars(e, out);
  return out;
}

bool mentions(const Expr& e, std::string_view var) {
  if (e.is_var()) return e.name() == var;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    if (mentions(e.arg(i), var)) return true;
  }
  return false;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl) {
  if (e.is_var()) {
    auto it = repl.find(e.name());
    return it == repl.end() ? e : it->second;
  }
  if (e.arity() == 0) return e;
  std::vector<Expr> args;
  args.reserve(e.arity());
  bool changed = false;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    args.push_back(substitute(e.arg(i), repl));
    changed = changed || args.back() != e.arg(i);
  }
  return changed ? Rebuild(e, std::move(args)) : e;
}

Expr rename(const Expr& e, const std::map<std::string, std::string>& names) {
  std::map<std::string, Expr> repl;
  for (const auto& [from, to] : names) repl.emplace(from, Expr::Var(to));
  return substitute(e, repl);
}

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

int Precedence(const Expr& e) {
  switch (e.op()) {
    case Op::kAdd:
    case Op::kSub: return 1;
    case Op::kMul:
    case Op::kDiv: return 2;
    case Op::kNeg: return 3;
    case Op::kPow: return 4;
    case Op::kConst: return e.value() < 0 ? 3 : 5;
    default: return 5;
  }
}

std::string Wrap(const Expr& e, bool paren) {
  std::string s = to_string(e);
  return paren ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const Expr& e) {
  const int p = Precedence(e);
  switch (e.op()) {
    case Op::kConst:
      return FormatNumber(e.value());
    case Op::kVar:
      return e.name();
    case Op::kNeg:
      return "-" + Wrap(e.arg(0), Precedence(e.arg(0)) <= p);
    case Op::kAdd:
      return Wrap(e.arg(0), Precedence(e.arg(0)) < p) + " + " +
             Wrap(e.arg(1), Precedence(e.arg(1)) < p);
    case Op::kSub:
      return Wrap(e.arg(0), Precedence(e.arg(0)) < p) + " - " +
             Wrap(e.arg(1), Precedence(e.arg(1)) <= p);
    case Op::kMul:
      return Wrap(e.arg(0), Precedence(e.arg(0)) < p) + "*" +
             Wrap(e.arg(1), Precedence(e.arg(1)) < p);
    case Op::kDiv:
      return Wrap(e.arg(0), Precedence(e.arg(0)) < p) + "/" +
             Wrap(e.arg(1), Precedence(e.arg(1)) <= p);
    case Op::kPow:
      // Right-associative: a^b^c = a^(b^c); the exponent is always a constant.
      return Wrap(e.arg(0), Precedence(e.arg(0)) <= p) + "^" +
             Wrap(e.arg(1), e.arg(1).value() < 0);
    case Op::kCall:
      return std::string(to_string(e.fn())) + "(" + to_string(e.arg(0)) + ")";
  }
  return "?";
}

namespace {

std::optional<AffineForm> Affine(const Expr& e) {
  switch (e.op()) {
    case Op::kConst: {
      AffineForm f;
      f.constant = e.value();
      return f;
    }
    case Op::kVar: {
      AffineForm f;
      f.coef[e.name()] = 1.0;
      return f;
    }
    case Op::kNeg: {
      auto a = Affine(e.arg(0));
      if (!a) return std::nullopt;
      for (auto& [v, c] : a->coef) c = -c;
      a->constant = -a->constant;
      return a;
    }
    case Op::kAdd:
    case Op::kSub: {
      auto a = Affine(e.arg(0));
      auto b = Affine(e.arg(1));
      if (!a || !b) return std::nullopt;
      const double sign = e.op() == Op::kAdd ? 1.0 : -1.0;
      for (const auto& [v, c] : b->coef) a->coef[v] += sign * c;
      a->constant += sign * b->constant;
      return a;
    }
    case Op::kMul: {
      auto a = Affine(e.arg(0));
      auto b = Affine(e.arg(1));
      if (!a || !b) return std::nullopt;
      if (!a->coef.empty() && !b->coef.empty()) return std::nullopt;
      if (!a->coef.empty()) std::swap(a, b);
      // a is a pure constant here.
      const double k = a->constant;
      for (auto& [v, c] : b->coef) c *= k;
      b->constant *= k;
      return b;
    }
    case Op::kDiv: {
      auto a = Affine(e.arg(0));
      auto b = Affine(e.arg(1));
      if (!a || !b || !b->coef.empty() || b->constant == 0.0) return std::nullopt;
      for (auto& [v, c] : a->coef) c /= b->constant;
      a->constant /= b->constant;
      return a;
    }
    case Op::kPow: {
      auto a = Affine(e.arg(0));
      if (!a) return std::nullopt;
      const double k = e.arg(1).value();
      if (a->coef.empty()) {
        a->constant = std::pow(a->constant, k);
        return a;
      }
      if (k == 1.0) return a;
      return std::nullopt;
    }
    case Op::kCall: {
      auto a = Affine(e.arg(0));
      if (!a || !a->coef.empty()) return std::nullopt;
      try {
        a->constant = eval_expr(e, {});
      } catch (const Error&) {
        return std::nullopt;
      }
      return a;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<AffineForm> affine_form(const Expr& e) {
  auto f = Affine(e);
  if (!f) return f;
  for (auto it = f->coef.begin(); it != f->coef.end();) {
    it = it->second == 0.0 ? f->coef.erase(it) : std::next(it);
  }
  return f;
}

bool is_affine(const Expr& e) { return affine_form(e).has_value(); }

}  // namespace gdpc
