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

#include "gdpc/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gdpc/error.hpp"

namespace gdpc {

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::kLe: return "<=";
    case Relation::kEq: return "=";
    case Relation::kGe: return ">=";
  }
  return "?";
}

std::optional<Relation> RelationFromString(std::string_view s) {
  if (s == "<=") return Relation::kLe;
  if (s == "=") return Relation::kEq;
  if (s == ">=") return Relation::kGe;
  return std::nullopt;
}

namespace {

// Magnitude used to scale the feasibility tolerance.
double Scale(const Expr& body, const Binding& point) {
  if (body.op() == Op::kSub) {
    return std::max(std::fabs(eval_expr(body.arg(0), point)),
                    std::fabs(eval_expr(body.arg(1), point)));
  }
  return std::fabs(eval_expr(body, point));
}

}  // namespace

double Constraint::violation(const Binding& point) const {
  const double v = eval_expr(body, point);
  switch (relation) {
    case Relation::kLe: return std::max(0.0, v);
    case Relation::kGe: return std::max(0.0, -v);
    case Relation::kEq: return std::fabs(v);
  }
  return 0.0;
}

bool Constraint::satisfied(const Binding& point, double tol) const {
  const double v = violation(point);
  if (v == 0.0) return true;
  return v <= tol * (1.0 + Scale(body, point));
}

Constraint normalize_constraint(const Expr& lhs, Relation rel, const Expr& rhs,
                                std::string label) {
  Constraint c;
  c.body = (rhs.is_const() && rhs.value() == 0.0) ? lhs : Expr::Sub(lhs, rhs);
  c.relation = rel;
  c.label = std::move(label);
  return c;
}

Constraint negate_comparison(const Constraint& c) {
  Constraint out = c;
  switch (c.relation) {
    case Relation::kLe: out.relation = Relation::kGe; break;
    case Relation::kGe: out.relation = Relation::kLe; break;
    case Relation::kEq:
      throw Error(ErrorCode::kNegateEq, "cannot negate equality " + to_string(c));
  }
  return out;
}

std::string to_string(const Constraint& c) {
  const std::string rel(to_string(c.relation));
  if (c.body.op() == Op::kSub) {
    return to_string(c.body.arg(0)) + " " + rel + " " + to_string(c.body.arg(1));
  }
  return to_string(c.body) + " " + rel + " 0";
}

std::string_view to_string(VarKind kind) {
  return kind == VarKind::kBinary ? "binary" : "continuous";
}

std::string_view to_string(VarOrigin origin) {
  switch (origin) {
    case VarOrigin::kUser: return "user";
    case VarOrigin::kDummy: return "dummy";
    case VarOrigin::kDisaggregatedTrue: return "disaggregated-true";
    case VarOrigin::kDisaggregatedFalse: return "disaggregated-false";
    case VarOrigin::kHatCopy: return "hat-copy";
    case VarOrigin::kIndicator: return "indicator";
  }
  return "?";
}

std::optional<VarKind> VarKindFromString(std::string_view s) {
  if (s == "binary") return VarKind::kBinary;
  if (s == "continuous") return VarKind::kContinuous;
  return std::nullopt;
}

std::optional<VarOrigin> VarOriginFromString(std::string_view s) {
  for (VarOrigin o : {VarOrigin::kUser, VarOrigin::kDummy, VarOrigin::kDisaggregatedTrue,
                      VarOrigin::kDisaggregatedFalse, VarOrigin::kHatCopy,
                      VarOrigin::kIndicator}) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

Variable Variable::Continuous(std::string name, double lb, double ub, VarOrigin origin) {
  Variable v;
  v.name = std::move(name);
  v.lb = lb;
  v.ub = ub;
  v.origin = origin;
  return v;
}

Variable Variable::Binary(std::string name, VarOrigin origin) {
  Variable v;
  v.name = std::move(name);
  v.lb = 0.0;
  v.ub = 1.0;
  v.kind = VarKind::kBinary;
  v.origin = origin;
  return v;
}

// --- LogicProp -------------------------------------------------------------

struct LogicProp::Node {
  Kind kind = Kind::kLit;
  std::string var;
  std::vector<LogicProp> parts;
};

LogicProp::LogicProp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

LogicProp LogicProp::Lit(std::string var) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLit;
  n->var = std::move(var);
  return LogicProp(std::move(n));
}

LogicProp LogicProp::Not(LogicProp a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNot;
  n->parts = {std::move(a)};
  return LogicProp(std::move(n));
}

LogicProp LogicProp::And(std::vector<LogicProp> parts) {
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAnd;
  n->parts = std::move(parts);
  return LogicProp(std::move(n));
}

LogicProp LogicProp::Or(std::vector<LogicProp> parts) {
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOr;
  n->parts = std::move(parts);
  return LogicProp(std::move(n));
}

LogicProp LogicProp::Implies(LogicProp a, LogicProp b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kImplies;
  n->parts = {std::move(a), std::move(b)};
  return LogicProp(std::move(n));
}

LogicProp::Kind LogicProp::kind() const { return node_->kind; }
const std::string& LogicProp::var() const { return node_->var; }
const std::vector<LogicProp>& LogicProp::parts() const { return node_->parts; }

bool LogicProp::eval(const std::map<std::string, bool, std::less<>>& values) const {
  switch (kind()) {
    case Kind::kLit: {
      auto it = values.find(var());
      if (it == values.end()) {
        throw Error(ErrorCode::kInvalidModel, "unassigned Boolean '" + var() + "'");
      }
      return it->second;
    }
    case Kind::kNot:
      return !parts()[0].eval(values);
    case Kind::kAnd:
      return std::all_of(parts().begin(), parts().end(),
                         [&](const LogicProp& p) { return p.eval(values); });
    case Kind::kOr:
      return std::any_of(parts().begin(), parts().end(),
                         [&](const LogicProp& p) { return p.eval(values); });
    case Kind::kImplies:
      return !parts()[0].eval(values) || parts()[1].eval(values);
  }
  return false;
}

std::set<std::string> LogicProp::variables() const {
  if (kind() == Kind::kLit) return {var()};
  std::set<std::string> out;
  for (const auto& p : parts()) {
    auto sub = p.variables();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::string LogicProp::to_string() const {
  auto join = [&](std::string_view sep) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts().size(); ++i) {
      if (i) s += sep;
      s += parts()[i].to_string();
    }
    return s + ")";
  };
  switch (kind()) {
    case Kind::kLit: return var();
    case Kind::kNot: return "not " + parts()[0].to_string();
    case Kind::kAnd: return join(" and ");
    case Kind::kOr: return join(" or ");
    case Kind::kImplies:
      return "(" + parts()[0].to_string() + " => " + parts()[1].to_string() + ")";
  }
  return "?";
}

// --- GdpModel ---------------------------------------------------------------

const Variable* GdpModel::find_variable(std::string_view name) const {
  for (const auto& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

const Disjunction* GdpModel::find_disjunction(std::string_view id) const {
  for (const auto& d : disjunctions) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

Box GdpModel::box() const {
  Box b;
  for (const auto& v : variables) b[v.name] = {v.lb, v.ub};
  return b;
}

void GdpModel::check() const {
  std::set<std::string> names;
  for (const auto& v : variables) {
    if (!names.insert(v.name).second) {
      throw Error(ErrorCode::kInvalidModel, "duplicate variable '" + v.name + "'");
    }
    if (v.lb > v.ub) {
      throw Error(ErrorCode::kInvalidModel, "lb > ub for '" + v.name + "'");
    }
  }
  auto check_vars = [&](const Constraint& c) {
    for (const auto& n : variables_of(c.body)) {
      if (!names.count(n)) {
        throw Error(ErrorCode::kInvalidModel,
                    "constraint " + c.label + " references undeclared '" + n + "'");
      }
    }
  };
  for (const auto& c : global_constraints) check_vars(c);
  std::set<std::string> booleans;
  for (const auto& d : disjunctions) {
    if (d.terms.empty()) {
      throw Error(ErrorCode::kEmptyDisjunction, "disjunction " + d.id + " has no terms");
    }
    for (const auto& t : d.terms) {
      if (!booleans.insert(t.bool_var).second) {
        throw Error(ErrorCode::kInvalidModel,
                    "Boolean '" + t.bool_var + "' appears in more than one term");
      }
      for (const auto& c : t.constraints) check_vars(c);
    }
  }
  for (const auto& p : props) {
    for (const auto& b : p.variables()) {
      if (!booleans.count(b)) {
        throw Error(ErrorCode::kInvalidModel, "proposition uses undeclared Boolean '" + b + "'");
      }
    }
  }
}

// --- MinlpModel -------------------------------------------------------------

std::string_view to_string(RowRole role) {
  switch (role) {
    case RowRole::kGlobal: return "global";
    case RowRole::kTermConstraint: return "term";
    case RowRole::kHatDefinition: return "hat-definition";
    case RowRole::kBoxTrue: return "box-true";
    case RowRole::kBoxFalse: return "box-false";
    case RowRole::kLink: return "link";
    case RowRole::kExactlyOne: return "exactly-one";
    case RowRole::kLogicClause: return "logic-clause";
    case RowRole::kBigM: return "big-m";
    case RowRole::kHullBox: return "hull-box";
    case RowRole::kHullLink: return "hull-link";
    case RowRole::kHullPerspective: return "hull-perspective";
  }
  return "?";
}

std::optional<RowRole> RowRoleFromString(std::string_view s) {
  for (RowRole r : {RowRole::kGlobal, RowRole::kTermConstraint, RowRole::kHatDefinition,
                    RowRole::kBoxTrue, RowRole::kBoxFalse, RowRole::kLink,
                    RowRole::kExactlyOne, RowRole::kLogicClause, RowRole::kBigM,
                    RowRole::kHullBox, RowRole::kHullLink, RowRole::kHullPerspective}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kNone: return "none";
    case Method::kTrueFalse: return "true-false";
    case Method::kBigM: return "bigm";
    case Method::kHullEps: return "hull-eps";
  }
  return "?";
}

std::optional<Method> MethodFromString(std::string_view s) {
  for (Method m : {Method::kNone, Method::kTrueFalse, Method::kBigM, Method::kHullEps}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

const Variable* MinlpModel::find_variable(std::string_view name) const {
  for (const auto& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

void MinlpModel::add(Constraint c, Provenance p) {
  provenance[c.label] = std::move(p);
  constraints.push_back(std::move(c));
}

}  // namespace gdpc
