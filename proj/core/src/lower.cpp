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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "gdpc/error.hpp"
#include "gdpc/interval.hpp"
#include "gdpc/normalize.hpp"

namespace gdpc {

namespace {

// Pushes negations onto comparisons (closed complements).
Condition Nnf(const Condition& c, bool negate) {
  switch (c.kind) {
    case Condition::Kind::kCompare: {
      if (!negate) return c;
      Condition out = c;
      out.cmp.relation = out.cmp.relation == Relation::kLe ? Relation::kGe : Relation::kLe;
      return out;
    }
    case Condition::Kind::kFlag:
      return negate ? Condition::Not(c) : c;
    case Condition::Kind::kNot:
      return Nnf(c.parts[0], !negate);
    case Condition::Kind::kAnd:
    case Condition::Kind::kOr: {
      std::vector<Condition> parts;
      for (const auto& p : c.parts) parts.push_back(Nnf(p, negate));
      const bool is_and = (c.kind == Condition::Kind::kAnd) != negate;
      return is_and ? Condition::And(std::move(parts)) : Condition::Or(std::move(parts));
    }
  }
  return c;
}

std::map<std::string, Expr> ParamSubstitution(const IfElseProgram& p) {
  std::map<std::string, Expr> m;
  for (const auto& [n, v] : p.params) m[n] = Expr::Constant(v);
  return m;
}

Constraint LowerComparison(const Comparison& c, const std::map<std::string, Expr>& params) {
  return normalize_constraint(substitute(c.lhs, params), c.relation, substitute(c.rhs, params));
}

Box ProgramBox(const IfElseProgram& p) {
  Box box;
  for (const auto& v : p.decls) box[v.name] = {v.lb, v.ub};
  return box;
}

// The constraint as g(x) <= 0.
Expr AsLe(const Constraint& c) { return c.relation == Relation::kGe ? -c.body : c.body; }

// Upper bound of e over the box, cancelling affine terms exactly.
double SupOver(const Expr& e, const Box& box) {
  if (auto aff = affine_form(e)) {
    double hi = aff->constant;
    for (const auto& [v, a] : aff->coef) {
      if (a == 0.0) continue;
      auto it = box.find(v);
      if (it == box.end()) return kInf;
      hi += a > 0 ? a * it->second.hi : a * it->second.lo;
    }
    return std::isnan(hi) ? kInf : hi;
  }
  try {
    return interval_bounds(e, box).hi;
  } catch (const Error&) {
    return kInf;
  }
}

// True when every point of the box satisfying `by` satisfies `c`, using the
// sufficient test sup(g_c - g_by) <= 0.
bool Implies(const Constraint& by, const Constraint& c, const Box& box) {
  if (by.relation == Relation::kEq || c.relation == Relation::kEq) return false;
  return SupOver(AsLe(c) - AsLe(by), box) <= 0.0;
}

// Drops constraints (never the first `pinned`) implied by another kept one.
std::vector<Constraint> PruneImplied(std::vector<Constraint> cs, std::size_t pinned,
                                     const Box& box) {
  std::vector<bool> keep(cs.size(), true);
  for (std::size_t i = pinned; i < cs.size(); ++i) {
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (k == i || !keep[k]) continue;
      if (Implies(cs[k], cs[i], box)) {
        keep[i] = false;
        break;
      }
    }
  }
  std::vector<Constraint> out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (keep[i]) out.push_back(std::move(cs[i]));
  }
  return out;
}

// Replaces each comparison by a flag for its atom, registering new atoms.
Condition ToFlags(const Condition& c, std::vector<Condition>& atoms, int block) {
  if (c.kind == Condition::Kind::kCompare) {
    auto it = std::find(atoms.begin(), atoms.end(), c);
    std::size_t idx = static_cast<std::size_t>(it - atoms.begin());
    if (it == atoms.end()) atoms.push_back(c);
    return Condition::Flag(fmt::format("Z_{}_{}", block, idx + 1));
  }
  Condition out = c;
  for (auto& p : out.parts) p = ToFlags(p, atoms, block);
  return out;
}

LogicProp ToProp(const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::kFlag: return LogicProp::Lit(c.flag);
    case Condition::Kind::kNot: return LogicProp::Not(ToProp(c.parts[0]));
    case Condition::Kind::kAnd:
    case Condition::Kind::kOr: {
      std::vector<LogicProp> parts;
      for (const auto& p : c.parts) parts.push_back(ToProp(p));
      return c.kind == Condition::Kind::kAnd ? LogicProp::And(std::move(parts))
                                             : LogicProp::Or(std::move(parts));
    }
    case Condition::Kind::kCompare: break;
  }
  throw Error(ErrorCode::kInvalidModel, "comparison left in split condition");
}

bool IsPureOr(const Condition& c) {
  return c.kind == Condition::Kind::kOr &&
         std::all_of(c.parts.begin(), c.parts.end(),
                     [](const Condition& p) { return p.is_atomic(); });
}

}  // namespace

const SplitBlock* SplitResult::find(int block) const {
  for (const auto& b : blocks) {
    if (b.block == block) return &b;
  }
  return nullptr;
}

SplitResult split_conditions(const IfElseProgram& p) {
  SplitResult out;
  out.program = p;
  const auto params = ParamSubstitution(p);
  const Box box = ProgramBox(p);
  int block = 0;
  for (auto& s : out.program.statements) {
    if (!s.is_if()) continue;
    ++block;
    IfBlock& b = s.block;
    if (!b.has_else) {
      throw Error(ErrorCode::kInvalidModel, "split_conditions requires explicit else branches");
    }
    bool compound = false;
    for (auto& br : b.branches) {
      br.condition = Nnf(br.condition, false);
      compound = compound || !br.condition.is_atomic();
    }
    if (!compound) continue;

    SplitBlock sb;
    sb.block = block;
    std::vector<Condition> atoms;
    std::vector<LogicProp> formulas;
    if (b.branches.size() == 1 && IsPureOr(b.branches[0].condition)) {
      // One r+1 term disjunction: a term per alternative plus the term
      // where all of them fail.
      Disjunction d;
      std::vector<Constraint> none;
      std::vector<LogicProp> lits;
      for (std::size_t i = 0; i < b.branches[0].condition.parts.size(); ++i) {
        const Condition& c = b.branches[0].condition.parts[i];
        atoms.push_back(c);
        const std::string z = fmt::format("Z_{}_{}", block, i + 1);
        d.terms.push_back({z, {LowerComparison(c.cmp, params)}});
        none.push_back(negate_comparison(LowerComparison(c.cmp, params)));
        lits.push_back(LogicProp::Lit(z));
      }
      d.terms.push_back({fmt::format("Zn_{}", block), PruneImplied(std::move(none), 0, box)});
      sb.condition_disjunctions.push_back(std::move(d));
      std::vector<Condition> flags;
      for (const auto& l : lits) flags.push_back(Condition::Flag(l.var()));
      b.branches[0].condition = Condition::Or(std::move(flags));
      formulas.push_back(LogicProp::Or(std::move(lits)));
    } else {
      for (auto& br : b.branches) {
        br.condition = ToFlags(br.condition, atoms, block);
        formulas.push_back(ToProp(br.condition));
      }
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Constraint c = LowerComparison(atoms[i].cmp, params);
        Disjunction d;
        d.terms.push_back({fmt::format("Z_{}_{}", block, i + 1), {c}});
        d.terms.push_back({fmt::format("Zn_{}_{}", block, i + 1), {negate_comparison(c)}});
        sb.condition_disjunctions.push_back(std::move(d));
      }
    }
    // First-match semantics: branch j fires when its formula holds and no
    // earlier one does; else fires when none holds.
    const std::size_t n = formulas.size();
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<LogicProp> ante{formulas[j]};
      for (std::size_t i = 0; i < j; ++i) ante.push_back(LogicProp::Not(formulas[i]));
      sb.links.push_back(LogicProp::Implies(LogicProp::And(std::move(ante)),
                                            LogicProp::Lit(fmt::format("Y_{}_{}", block, j + 1))));
    }
    sb.links.push_back(LogicProp::Implies(LogicProp::Not(LogicProp::Or(formulas)),
                                          LogicProp::Lit(fmt::format("Y_{}_{}", block, n + 1))));
    out.blocks.push_back(std::move(sb));
  }
  return out;
}

namespace {

class Builder {
 public:
  explicit Builder(const SplitResult& split)
      : split_(split),
        p_(split.program),
        params_(ParamSubstitution(p_)),
        box_(ProgramBox(p_)),
        dependent_(p_.assigned_variables()) {}

  Lowering Run() {
    Lowering out;
    out.gdp.variables = p_.decls;
    int block = 0;
    for (const auto& s : p_.statements) {
      if (!s.is_if()) {
        out.gdp.global_constraints.push_back(
            Assignment(s, fmt::format("g{}", out.gdp.global_constraints.size() + 1)));
        continue;
      }
      ++block;
      LowerBlock(s.block, block, out);
    }
    out.gdp.check();
    return out;
  }

 private:
  Constraint Assignment(const Statement& s, std::string label) const {
    return normalize_constraint(Expr::Var(s.target), Relation::kEq,
                                substitute(s.rhs, params_), std::move(label));
  }

  // Dependent variables on the left of a comparison, or on the right when
  // the left has none.
  std::vector<std::string> SubjectVariables(const Constraint& c) const {
    std::vector<Expr> sides{c.body};
    if (c.body.op() == Op::kSub) sides = {c.body.arg(0), c.body.arg(1)};
    for (const auto& side : sides) {
      std::vector<std::string> vars;
      for (const auto& v : variables_of(side)) {
        if (dependent_.count(v)) vars.push_back(v);
      }
      if (!vars.empty()) return vars;
    }
    return {};
  }

  std::string NextId() { return fmt::format("k{}", ++next_id_); }

  // Labels rows and records the disaggregation set.
  void Finish(Disjunction d, std::vector<std::string> assigned,
              const std::vector<std::string>& explicit_vars, Lowering& out) {
    std::vector<std::string> set;
    auto add = [&](const std::string& v) {
      if (std::find(set.begin(), set.end(), v) == set.end()) set.push_back(v);
    };
    std::vector<const Constraint*> tests;
    for (const auto& t : d.terms) {
      for (const auto& c : t.constraints) {
        if (!c.label.empty()) continue;  // assignments carry a marker label
        tests.push_back(&c);
        for (const auto& v : SubjectVariables(c)) add(v);
      }
    }
    for (const auto& v : assigned) add(v);
    for (const auto* c : tests) {
      const auto vars = variables_of(c->body);
      const bool covered = std::any_of(vars.begin(), vars.end(), [&](const auto& v) {
        return std::find(set.begin(), set.end(), v) != set.end();
      });
      if (!covered) {
        for (const auto& v : vars) add(v);
      }
    }
    for (const auto& v : explicit_vars) {
      bool used = false;
      for (const auto& t : d.terms) {
        for (const auto& c : t.constraints) used = used || mentions(c.body, v);
      }
      if (used) add(v);
    }
    for (const auto& v : set) {
      const Variable* var = out.gdp.find_variable(v);
      if (!var || !Interval{var->lb, var->ub}.bounded()) {
        throw Error(ErrorCode::kUnboundedDisagg,
                    fmt::format("variable '{}' must be disaggregated in disjunction {} but "
                                "lacks finite bounds",
                                v, d.id));
      }
    }
    for (std::size_t j = 0; j < d.terms.size(); ++j) {
      auto& cs = d.terms[j].constraints;
      for (std::size_t c = 0; c < cs.size(); ++c) {
        cs[c].label = fmt::format("{}_t{}_c{}", d.id, j + 1, c + 1);
      }
    }
    out.gdp.disagg_sets[d.id] = std::move(set);
    out.gdp.disjunctions.push_back(std::move(d));
  }

  void LowerBlock(const IfBlock& b, int block, Lowering& out) {
    BlockLowering bl;
    bl.block = block;
    const SplitBlock* sb = split_.find(block);
    bl.split = sb != nullptr;
    if (sb) {
      for (Disjunction d : sb->condition_disjunctions) {
        d.id = NextId();
        bl.condition_disjunctions.push_back(d.id);
        Finish(std::move(d), {}, b.disaggregate, out);
      }
      for (const auto& prop : sb->links) out.gdp.props.push_back(prop);
    }

    Disjunction d;
    d.id = NextId();
    bl.disjunction = d.id;
    std::vector<const std::vector<Statement>*> bodies;
    std::vector<Constraint> conds;
    for (const auto& br : b.branches) {
      bodies.push_back(&br.body);
      if (!sb) conds.push_back(LowerComparison(br.condition.cmp, params_));
    }
    bodies.push_back(&b.else_body);

    std::vector<std::string> assigned;
    for (std::size_t j = 0; j < bodies.size(); ++j) {
      DisjunctTerm term;
      term.bool_var = fmt::format("Y_{}_{}", block, j + 1);
      bl.branch_booleans.push_back(term.bool_var);
      if (!sb) {
        std::vector<Constraint> cs;
        if (j < conds.size()) cs.push_back(conds[j]);
        for (std::size_t i = 0; i < j && i < conds.size(); ++i) {
          cs.push_back(negate_comparison(conds[i]));
        }
        term.constraints = PruneImplied(std::move(cs), j < conds.size() ? 1 : 0, box_);
      }
      for (const auto& st : *bodies[j]) {
        if (st.is_if()) {
          throw Error(ErrorCode::kInvalidModel, "build_disjunctions requires a flat program");
        }
        // Non-empty placeholder label marks assignment rows until Finish
        // assigns final labels.
        term.constraints.push_back(Assignment(st, "="));
        if (std::find(assigned.begin(), assigned.end(), st.target) == assigned.end()) {
          assigned.push_back(st.target);
        }
      }
      d.terms.push_back(std::move(term));
    }
    Finish(std::move(d), std::move(assigned), b.disaggregate, out);
    out.blocks.push_back(std::move(bl));
  }

  const SplitResult& split_;
  const IfElseProgram& p_;
  std::map<std::string, Expr> params_;
  Box box_;
  std::set<std::string> dependent_;
  int next_id_ = 0;
};

}  // namespace

Lowering build_disjunctions(const SplitResult& split) { return Builder(split).Run(); }

// --- propositional logic ----------------------------------------------------

bool ClauseSet::eval(const std::map<std::string, bool, std::less<>>& values) const {
  for (const auto& c : clauses) {
    bool sat = false;
    for (const auto& l : c) {
      auto it = values.find(l.var);
      if (it == values.end()) {
        throw Error(ErrorCode::kInvalidModel, "unassigned Boolean '" + l.var + "'");
      }
      if (it->second == l.positive) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::set<std::string> ClauseSet::variables() const {
  std::set<std::string> out;
  for (const auto& c : clauses) {
    for (const auto& l : c) out.insert(l.var);
  }
  return out;
}

namespace {

using Cnf = std::vector<Clause>;

// Sorts, dedupes; returns false for a tautology.
bool Canonical(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i].var == c[i - 1].var) return false;
  }
  return true;
}

Cnf CnfOf(const LogicProp& p, bool negate) {
  using K = LogicProp::Kind;
  switch (p.kind()) {
    case K::kLit:
      return {{Literal{p.var(), !negate}}};
    case K::kNot:
      return CnfOf(p.parts()[0], !negate);
    case K::kImplies:
      return CnfOf(LogicProp::Or({LogicProp::Not(p.parts()[0]), p.parts()[1]}), negate);
    case K::kAnd:
    case K::kOr: {
      const bool conj = (p.kind() == K::kAnd) != negate;
      if (conj) {
        Cnf out;
        for (const auto& part : p.parts()) {
          Cnf sub = CnfOf(part, negate);
          out.insert(out.end(), sub.begin(), sub.end());
          if (out.size() > kMaxClauses) {
            throw Error(ErrorCode::kTooLarge, "clause expansion exceeds 4096 clauses");
          }
        }
        return out;
      }
      Cnf acc{Clause{}};
      for (const auto& part : p.parts()) {
        Cnf sub = CnfOf(part, negate);
        if (acc.size() * sub.size() > kMaxClauses) {
          throw Error(ErrorCode::kTooLarge, "clause distribution exceeds 4096 clauses");
        }
        Cnf next;
        for (const auto& a : acc) {
          for (const auto& b : sub) {
            Clause c = a;
            c.insert(c.end(), b.begin(), b.end());
            if (Canonical(c)) next.push_back(std::move(c));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

ClauseSet to_cnf(const LogicProp& prop) {
  ClauseSet out;
  for (Clause c : CnfOf(prop, false)) {
    if (!Canonical(c)) continue;
    if (std::find(out.clauses.begin(), out.clauses.end(), c) != out.clauses.end()) continue;
    out.clauses.push_back(std::move(c));
  }
  if (out.clauses.size() > kMaxClauses) {
    throw Error(ErrorCode::kTooLarge, "clause set exceeds 4096 clauses");
  }
  return out;
}

std::vector<Constraint> clauses_to_linear(const ClauseSet& cs,
                                          const std::map<std::string, std::string>& binary_of,
                                          int first_index) {
  auto binary = [&](const std::string& v) {
    auto it = binary_of.find(v);
    return Expr::Var(it == binary_of.end() ? v : it->second);
  };
  auto sum = [&](const std::vector<std::string>& vars) {
    Expr e = binary(vars[0]);
    for (std::size_t i = 1; i < vars.size(); ++i) e = e + binary(vars[i]);
    return e;
  };
  std::vector<Constraint> out;
  int index = first_index;
  for (const auto& clause : cs.clauses) {
    std::vector<std::string> pos, neg;
    for (const auto& l : clause) (l.positive ? pos : neg).push_back(l.var);
    const Expr lhs = pos.empty() ? Expr::Constant(0) : sum(pos);
    Expr rhs = Expr::Constant(1);
    if (!neg.empty()) {
      rhs = sum(neg);
      if (neg.size() > 1) rhs = rhs - Expr::Constant(static_cast<double>(neg.size() - 1));
    }
    Constraint c;
    c.body = Expr::Sub(lhs, rhs);
    c.relation = Relation::kGe;
    c.label = fmt::format("clause_{}", index++);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace gdpc
