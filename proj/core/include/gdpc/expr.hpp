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

#ifndef GDPC_EXPR_HPP_
#define GDPC_EXPR_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gdpc {

enum class Op { kConst, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
enum class Fn { kExp, kLog, kSqrt, kSin, kCos, kAbs };

std::string_view to_string(Fn fn);
std::optional<Fn> FnFromName(std::string_view name);

// Immutable algebraic expression tree. Copies share nodes.
class Expr {
 public:
  // The zero constant.
  Expr();

  static Expr Constant(double value);
  static Expr Var(std::string name);
  static Expr Neg(Expr a);
  static Expr Add(Expr a, Expr b);
  static Expr Sub(Expr a, Expr b);
  static Expr Mul(Expr a, Expr b);
  static Expr Div(Expr a, Expr b);
  // The exponent must be a constant; throws E_INVALID_MODEL otherwise.
  static Expr Pow(Expr base, Expr exponent);
  static Expr Call(Fn fn, Expr arg);

  Op op() const;
  double value() const;              // kConst only
  const std::string& name() const;   // kVar only
  Fn fn() const;                     // kCall only
  std::size_t arity() const;
  const Expr& arg(std::size_t i) const;

  bool is_const() const { return op() == Op::kConst; }
  bool is_var() const { return op() == Op::kVar; }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr Make(Op op, std::vector<Expr> args);

  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

using Binding = std::map<std::string, double, std::less<>>;

// Throws E_DOMAIN on division by zero, log/sqrt outside domain, etc.
double eval_expr(const Expr& e, const Binding& binding);

std::set<std::string> variables_of(const Expr& e);
bool mentions(const Expr& e, std::string_view var);

// Replaces variables by expressions; unmapped variables are kept.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl);
Expr rename(const Expr& e, const std::map<std::string, std::string>& names);

// Infix rendering with minimal parentheses. Constants use the shortest
// representation that parses back to the same double.
std::string to_string(const Expr& e);
std::string FormatNumber(double v);

// Affine view c0 + sum coef[v] * v, or nullopt when e is not affine.
struct AffineForm {
  std::map<std::string, double> coef;
  double constant = 0.0;
};
std::optional<AffineForm> affine_form(const Expr& e);
bool is_affine(const Expr& e);

}  // namespace gdpc

#endif  // GDPC_EXPR_HPP_
