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

#ifndef GDPC_MODEL_HPP_
#define GDPC_MODEL_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gdpc/expr.hpp"
#include "gdpc/interval.hpp"

namespace gdpc {

enum class Relation { kLe, kEq, kGe };  // body REL 0

std::string_view to_string(Relation rel);
std::optional<Relation> RelationFromString(std::string_view s);

struct Constraint {
  Expr body;
  Relation relation = Relation::kLe;
  std::string label;

  // True when the constraint holds at the point within tol*(1+|scale|).
  bool satisfied(const Binding& point, double tol = 0.0) const;
  // Amount by which the constraint is violated (0 when satisfied).
  double violation(const Binding& point) const;
};

// lhs REL rhs -> (lhs - rhs) REL 0. A literal zero rhs is dropped. The
// relation is kept as given (>= stays >=).
Constraint normalize_constraint(const Expr& lhs, Relation rel, const Expr& rhs,
                                std::string label = {});

// Closed complement: <= becomes >= and vice versa with the body untouched,
// so the boundary satisfies both. Throws E_NEGATE_EQ on equalities.
Constraint negate_comparison(const Constraint& c);

// Renders "lhs REL rhs" when the body is a top-level difference.
std::string to_string(const Constraint& c);

enum class VarKind { kContinuous, kBinary };
enum class VarOrigin {
  kUser,
  kDummy,
  kDisaggregatedTrue,
  kDisaggregatedFalse,
  kHatCopy,
  kIndicator,
};

std::string_view to_string(VarKind kind);
std::string_view to_string(VarOrigin origin);
std::optional<VarKind> VarKindFromString(std::string_view s);
std::optional<VarOrigin> VarOriginFromString(std::string_view s);

// Which (disjunction, term, source variable) an auxiliary belongs to. For
// indicator binaries `source` is the Boolean the binary replaces.
struct AuxInfo {
  std::string source;
  std::string disjunction;
  int term = 0;  // 1-based

  friend bool operator==(const AuxInfo&, const AuxInfo&) = default;
};

struct Variable {
  std::string name;
  double lb = -kInf;
  double ub = kInf;
  VarKind kind = VarKind::kContinuous;
  VarOrigin origin = VarOrigin::kUser;
  std::optional<AuxInfo> aux;

  static Variable Continuous(std::string name, double lb, double ub,
                             VarOrigin origin = VarOrigin::kUser);
  static Variable Binary(std::string name, VarOrigin origin = VarOrigin::kIndicator);
};

// Propositional formula over Boolean variable names.
class LogicProp {
 public:
  enum class Kind { kLit, kNot, kAnd, kOr, kImplies };

  static LogicProp Lit(std::string var);
  static LogicProp Not(LogicProp a);
  static LogicProp And(std::vector<LogicProp> parts);
  static LogicProp Or(std::vector<LogicProp> parts);
  static LogicProp Implies(LogicProp a, LogicProp b);

  Kind kind() const;
  const std::string& var() const;  // kLit only
  const std::vector<LogicProp>& parts() const;

  bool eval(const std::map<std::string, bool, std::less<>>& values) const;
  std::set<std::string> variables() const;
  std::string to_string() const;

 private:
  struct Node;
  explicit LogicProp(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct DisjunctTerm {
  std::string bool_var;
  std::vector<Constraint> constraints;
};

struct Disjunction {
  std::string id;
  std::vector<DisjunctTerm> terms;
  bool exactly_one = true;
};

struct GdpModel {
  std::vector<Variable> variables;
  std::vector<Constraint> global_constraints;
  std::vector<Disjunction> disjunctions;
  std::vector<LogicProp> props;
  // disjunction id -> variables to disaggregate, in deterministic order.
  std::map<std::string, std::vector<std::string>> disagg_sets;

  const Variable* find_variable(std::string_view name) const;
  const Disjunction* find_disjunction(std::string_view id) const;
  Box box() const;
  // Throws E_INVALID_MODEL on a broken invariant.
  void check() const;
};

// What a reformulated row is. The counting convention for statistics keys
// off this tag.
enum class RowRole {
  kGlobal,
  kTermConstraint,
  kHatDefinition,
  kBoxTrue,
  kBoxFalse,
  kLink,
  kExactlyOne,
  kLogicClause,
  kBigM,
  kHullBox,
  kHullLink,
  kHullPerspective,
};

std::string_view to_string(RowRole role);
std::optional<RowRole> RowRoleFromString(std::string_view s);

struct Provenance {
  // "global", "logic-clause", a disjunction id ("k1") or a term ("k1/t2").
  std::string source;
  RowRole role = RowRole::kGlobal;
  // Rows sharing a key form one counted constraint (two-sided boxes).
  std::string row;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

enum class Method { kNone, kTrueFalse, kBigM, kHullEps };
std::string_view to_string(Method m);
std::optional<Method> MethodFromString(std::string_view s);

struct MinlpModel {
  Method method = Method::kNone;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<std::vector<std::string>> binary_exactly_one;
  std::map<std::string, Provenance> provenance;

  const Variable* find_variable(std::string_view name) const;
  // Appends a row and records its provenance.
  void add(Constraint c, Provenance p);
};

}  // namespace gdpc

#endif  // GDPC_MODEL_HPP_
