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

#ifndef GDPC_PROGRAM_HPP_
#define GDPC_PROGRAM_HPP_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdpc/expr.hpp"
#include "gdpc/model.hpp"

namespace gdpc {

// Atomic testing condition `lhs REL rhs`, REL in {<=, >=}.
struct Comparison {
  Expr lhs;
  Relation relation = Relation::kLe;
  Expr rhs;

  Constraint to_constraint(std::string label = {}) const {
    return normalize_constraint(lhs, relation, rhs, std::move(label));
  }
  friend bool operator==(const Comparison& a, const Comparison& b) {
    return a.lhs == b.lhs && a.relation == b.relation && a.rhs == b.rhs;
  }
};

// Boolean combination of comparisons. kFlag refers to a Boolean introduced
// by condition splitting and never appears in parsed source.
struct Condition {
  enum class Kind { kCompare, kAnd, kOr, kNot, kFlag };

  Kind kind = Kind::kCompare;
  Comparison cmp;
  std::string flag;
  std::vector<Condition> parts;

  static Condition Compare(Comparison c);
  static Condition And(std::vector<Condition> parts);
  static Condition Or(std::vector<Condition> parts);
  static Condition Not(Condition c);
  static Condition Flag(std::string name);

  bool is_atomic() const { return kind == Kind::kCompare; }
  friend bool operator==(const Condition& a, const Condition& b);
};

struct Statement;

struct Branch {
  Condition condition;
  std::vector<Statement> body;
  int line = 0;
};

struct IfBlock {
  std::vector<Branch> branches;
  bool has_else = false;
  std::vector<Statement> else_body;
  int else_line = 0;
  // Variables named by a preceding `disaggregate v in block;`.
  std::vector<std::string> disaggregate;
};

struct Statement {
  enum class Kind { kAssign, kIf };

  Kind kind = Kind::kAssign;
  std::string target;
  Expr rhs;
  IfBlock block;
  int line = 0;

  static Statement Assign(std::string target, Expr rhs, int line = 0);
  static Statement If(IfBlock block, int line = 0);

  bool is_if() const { return kind == Kind::kIf; }
};

bool operator==(const Statement& a, const Statement& b);
bool operator==(const Branch& a, const Branch& b);
bool operator==(const IfBlock& a, const IfBlock& b);

struct Diagnostic {
  enum class Severity { kWarning, kError };

  std::string code;  // D_UNBOUNDED, D_DEAD_ASSIGN, ...
  Severity severity = Severity::kWarning;
  std::string message;
  int line = 0;
};

struct IfElseProgram {
  std::vector<Variable> decls;
  std::vector<std::pair<std::string, double>> params;
  std::vector<Statement> statements;
  // Parser warnings (e.g. strict comparisons coerced to closed ones).
  std::vector<Diagnostic> warnings;

  const Variable* find_decl(std::string_view name) const;
  std::optional<double> param(std::string_view name) const;
  bool is_param(std::string_view name) const { return param(name).has_value(); }
  Binding param_binding() const;
  // Variables assigned anywhere (the "dependent" variables).
  std::set<std::string> assigned_variables() const;
  // Declared variables that are never assigned.
  std::vector<std::string> input_variables() const;

  friend bool operator==(const IfElseProgram& a, const IfElseProgram& b);
};

// Throws E_SYNTAX (with line:column), E_UNDECLARED, E_REDECLARED.
IfElseProgram parse_program(std::string_view text);

// Canonical source text; parse(pretty_print(parse(s))) == parse(s).
std::string pretty_print(const IfElseProgram& p);
std::string to_string(const Condition& c);

std::vector<Diagnostic> validate(const IfElseProgram& p);

// Helpers shared by the normalization passes.
void CollectAssigned(const std::vector<Statement>& stmts, std::set<std::string>& out);
void CollectReads(const Condition& c, std::set<std::string>& out);

}  // namespace gdpc

#endif  // GDPC_PROGRAM_HPP_
