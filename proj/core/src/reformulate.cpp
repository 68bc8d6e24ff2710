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

#include "gdpc/reformulate.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "gdpc/error.hpp"
#include "gdpc/interval.hpp"
#include "gdpc/normalize.hpp"

namespace gdpc {

std::string LambdaName(const std::string& disjunction, int term) {
  return fmt::format("lam_{}_{}", term, disjunction);
}
std::string HatName(const std::string& var, const std::string& disjunction, int term) {
  return fmt::format("xhat_{}_{}_{}", var, term, disjunction);
}
std::string NuTrueName(const std::string& var, const std::string& disjunction, int term) {
  return fmt::format("nu_t_{}_{}_{}", var, term, disjunction);
}
std::string NuFalseName(const std::string& var, const std::string& disjunction, int term) {
  return fmt::format("nu_f_{}_{}_{}", var, term, disjunction);
}
std::string NuHullName(const std::string& var, const std::string& disjunction, int term) {
  return fmt::format("nu_{}_{}_{}", var, term, disjunction);
}

std::string_view to_string(HullVariant v) {
  return v == HullVariant::kSawaya2 ? "sawaya-2" : "lee-grossmann";
}

std::optional<HullVariant> HullVariantFromString(std::string_view s) {
  if (s == "lee-grossmann") return HullVariant::kLeeGrossmann;
  if (s == "sawaya-2") return HullVariant::kSawaya2;
  return std::nullopt;
}

namespace {

Expr C(double v) { return Expr::Constant(v); }
Expr V(const std::string& n) { return Expr::Var(n); }

// c * e, folding c = 0 and c = 1.
Expr Scale(double c, const Expr& e) {
  if (c == 0.0) return C(0);
  if (c == 1.0) return e;
  return C(c) * e;
}

std::string TermSource(const std::string& k, int j) { return fmt::format("{}/t{}", k, j); }

Constraint Row(const Expr& lhs, Relation rel, const Expr& rhs, std::string label) {
  return normalize_constraint(lhs, rel, rhs, std::move(label));
}

const std::vector<std::string>& DisaggSet(const GdpModel& g, const std::string& k) {
  static const std::vector<std::string> kEmpty;
  auto it = g.disagg_sets.find(k);
  return it == g.disagg_sets.end() ? kEmpty : it->second;
}

const Variable& Bounded(const GdpModel& g, const std::string& v, const std::string& k) {
  const Variable* var = g.find_variable(v);
  if (!var || !Interval{var->lb, var->ub}.bounded()) {
    throw Error(ErrorCode::kUnboundedDisagg,
                fmt::format("disaggregated variable '{}' of {} lacks finite bounds", v, k));
  }
  return *var;
}

// Globals, indicator binaries, exactly-one rows and logic clauses: the part
// every backend shares.
MinlpModel CommonPart(const GdpModel& g, Method method) {
  g.check();
  MinlpModel m;
  m.method = method;
  m.variables = g.variables;
  for (const auto& c : g.global_constraints) m.add(c, {"global", RowRole::kGlobal, c.label});
  std::map<std::string, std::string> binary_of;
  for (const auto& d : g.disjunctions) {
    std::vector<std::string> group;
    Expr sum;
    for (std::size_t j = 0; j < d.terms.size(); ++j) {
      const int term = static_cast<int>(j) + 1;
      Variable lam = Variable::Binary(LambdaName(d.id, term));
      lam.aux = AuxInfo{d.terms[j].bool_var, d.id, term};
      binary_of[d.terms[j].bool_var] = lam.name;
      group.push_back(lam.name);
      sum = j == 0 ? V(lam.name) : sum + V(lam.name);
      m.variables.push_back(std::move(lam));
    }
    const std::string label = d.id + "_one";
    m.add(Row(sum, Relation::kEq, C(1), label), {d.id, RowRole::kExactlyOne, label});
    m.binary_exactly_one.push_back(std::move(group));
  }
  int index = 1;
  for (const auto& p : g.props) {
    const auto rows = clauses_to_linear(to_cnf(p), binary_of, index);
    index += static_cast<int>(rows.size());
    for (const auto& r : rows) m.add(r, {"logic-clause", RowRole::kLogicClause, r.label});
  }
  return m;
}

Variable Aux(std::string name, double lb, double ub, VarOrigin origin, const std::string& source,
             const std::string& k, int term) {
  Variable v = Variable::Continuous(std::move(name), lb, ub, origin);
  v.aux = AuxInfo{source, k, term};
  return v;
}

}  // namespace

Reformulation reformulate_true_false(const GdpModel& g) {
  MinlpModel m = CommonPart(g, Method::kTrueFalse);
  for (const auto& d : g.disjunctions) {
    const auto& set = DisaggSet(g, d.id);
    for (const auto& v : set) {
      const Variable& var = Bounded(g, v, d.id);
      const double lo = var.lb, hi = var.ub;
      const double nlo = std::min(0.0, lo), nhi = std::max(0.0, hi);
      Expr link;
      for (std::size_t j = 0; j < d.terms.size(); ++j) {
        const int t = static_cast<int>(j) + 1;
        const std::string lam = LambdaName(d.id, t);
        const std::string hat = HatName(v, d.id, t);
        const std::string nt = NuTrueName(v, d.id, t);
        const std::string nf = NuFalseName(v, d.id, t);
        const std::string src = TermSource(d.id, t);
        m.variables.push_back(Aux(hat, lo, hi, VarOrigin::kHatCopy, v, d.id, t));
        m.variables.push_back(Aux(nt, nlo, nhi, VarOrigin::kDisaggregatedTrue, v, d.id, t));
        m.variables.push_back(Aux(nf, nlo, nhi, VarOrigin::kDisaggregatedFalse, v, d.id, t));

        const std::string hat_label = fmt::format("{}_hat_{}_{}", d.id, v, t);
        m.add(Row(V(hat), Relation::kEq, V(nt) + V(nf), hat_label),
              {src, RowRole::kHatDefinition, hat_label});
        const std::string bt = fmt::format("{}_boxt_{}_{}", d.id, v, t);
        m.add(Row(V(nt), Relation::kGe, Scale(lo, V(lam)), bt + "_lo"),
              {src, RowRole::kBoxTrue, bt});
        m.add(Row(V(nt), Relation::kLe, Scale(hi, V(lam)), bt + "_up"),
              {src, RowRole::kBoxTrue, bt});
        const std::string bf = fmt::format("{}_boxf_{}_{}", d.id, v, t);
        const Expr off = C(1) - V(lam);
        m.add(Row(V(nf), Relation::kGe, Scale(lo, off), bf + "_lo"),
              {src, RowRole::kBoxFalse, bf});
        m.add(Row(V(nf), Relation::kLe, Scale(hi, off), bf + "_up"),
              {src, RowRole::kBoxFalse, bf});
        link = j == 0 ? V(nt) : link + V(nt);
      }
      const std::string ll = fmt::format("{}_link_{}", d.id, v);
      m.add(Row(V(v), Relation::kEq, link, ll), {d.id, RowRole::kLink, ll});
    }
    for (std::size_t j = 0; j < d.terms.size(); ++j) {
      const int t = static_cast<int>(j) + 1;
      std::map<std::string, std::string> copies;
      for (const auto& v : set) copies[v] = HatName(v, d.id, t);
      for (const auto& c : d.terms[j].constraints) {
        Constraint r = c;
        r.body = rename(c.body, copies);
        m.add(std::move(r), {TermSource(d.id, t), RowRole::kTermConstraint, c.label});
      }
    }
  }
  Reformulation out;
  out.model = std::move(m);
  out.stats = stats(out.model, g);
  return out;
}

Reformulation reformulate_bigm(const GdpModel& g, const BigMPolicy& policy) {
  MinlpModel m = CommonPart(g, Method::kBigM);
  const Box box = g.box();
  for (const auto& d : g.disjunctions) {
    for (std::size_t j = 0; j < d.terms.size(); ++j) {
      const int t = static_cast<int>(j) + 1;
      const Expr off = C(1) - V(LambdaName(d.id, t));
      for (const auto& c : d.terms[j].constraints) {
        std::optional<double> user = policy.global_m;
        if (auto it = policy.per_constraint.find(c.label); it != policy.per_constraint.end()) {
          user = it->second;
        }
        Interval enclosure;
        if (!user) {
          enclosure = interval_bounds(c.body, box);
        }
        auto big_m = [&](bool upper) {
          if (user) return *user;
          const double e = upper ? enclosure.hi : -enclosure.lo;
          if (!std::isfinite(e)) {
            throw Error(ErrorCode::kMUnbounded,
                        fmt::format("constraint {} has no finite interval enclosure; supply "
                                    "--bigm",
                                    c.label));
          }
          return std::max(0.0, e);
        };
        const Provenance prov{TermSource(d.id, t), RowRole::kBigM, c.label};
        const bool le = c.relation != Relation::kGe;
        const bool ge = c.relation != Relation::kLe;
        const bool split = le && ge;
        if (le) {
          Constraint r;
          r.body = Expr::Sub(c.body, Scale(big_m(true), off));
          r.relation = Relation::kLe;
          r.label = split ? c.label + "_le" : c.label;
          m.add(std::move(r), prov);
        }
        if (ge) {
          Constraint r;
          r.body = Expr::Sub(c.body, Scale(-big_m(false), off));
          r.relation = Relation::kGe;
          r.label = split ? c.label + "_ge" : c.label;
          m.add(std::move(r), prov);
        }
      }
    }
  }
  Reformulation out;
  out.model = std::move(m);
  out.stats = stats(out.model, g);
  return out;
}

Expr epsilon_perspective(const Expr& h, const std::map<std::string, std::string>& nu_names,
                         const std::string& lambda, double eps, HullVariant variant) {
  const Expr scale = V(lambda) + C(eps);
  std::map<std::string, Expr> repl;
  for (const auto& [v, nu] : nu_names) repl[v] = V(nu) / scale;
  Expr out = scale * substitute(h, repl);
  if (variant == HullVariant::kSawaya2) {
    Binding zero;
    for (const auto& v : variables_of(h)) {
      if (!nu_names.count(v)) {
        throw Error(ErrorCode::kDomain,
                    fmt::format("sawaya-2 evaluates h(0) over disaggregated variables only, "
                                "but '{}' is shared; use lee-grossmann or disaggregate it",
                                v));
      }
      zero[v] = 0.0;
    }
    const double h0 = eval_expr(h, zero);
    out = out + C(h0) * (V(lambda) - C(1));
  }
  return out;
}

double perspective_value(const Expr& h, const Binding& nu, double lambda, double eps,
                         HullVariant variant) {
  std::map<std::string, std::string> names;
  Binding point;
  for (const auto& v : variables_of(h)) {
    names[v] = "nu_" + v;
    auto it = nu.find(v);
    point["nu_" + v] = it == nu.end() ? 0.0 : it->second;
  }
  const std::string lam = "lam__";
  point[lam] = lambda;
  return eval_expr(epsilon_perspective(h, names, lam, eps, variant), point);
}

namespace {

// Exact perspective of an affine h: sum a_i nu_i + lambda * (shared part + c).
std::optional<Expr> LinearPerspective(const Expr& h,
                                      const std::map<std::string, std::string>& nu_names,
                                      const std::string& lambda) {
  auto aff = affine_form(h);
  if (!aff) return std::nullopt;
  std::optional<Expr> disagg;
  std::optional<Expr> shared;
  // acc + a*e, written as a subtraction for negative a.
  auto add = [](std::optional<Expr>& acc, double a, const Expr& e) {
    if (!acc) {
      acc = Scale(a, e);
    } else {
      acc = a < 0 ? *acc - Scale(-a, e) : *acc + Scale(a, e);
    }
  };
  for (const auto& [v, a] : aff->coef) {
    if (a == 0.0) continue;
    auto it = nu_names.find(v);
    if (it != nu_names.end()) {
      add(disagg, a, V(it->second));
    } else {
      add(shared, a, V(v));
    }
  }
  if (!shared) {
    if (aff->constant != 0.0) add(disagg, aff->constant, V(lambda));
  } else {
    if (aff->constant != 0.0) add(shared, 1.0, C(aff->constant));
    add(disagg, 1.0, V(lambda) * *shared);
  }
  return disagg ? *disagg : C(0);
}

}  // namespace

Reformulation reformulate_hull_eps(const GdpModel& g, double eps, HullVariant variant) {
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::kEpsNonpositive, fmt::format("eps must be positive, got {}", eps));
  }
  if (eps < kMinEps) {
    throw Error(ErrorCode::kEpsNonpositive,
                fmt::format("eps = {} is below {}; values this small cause numerical "
                            "difficulties",
                            eps, kMinEps));
  }
  MinlpModel m = CommonPart(g, Method::kHullEps);
  for (const auto& d : g.disjunctions) {
    const auto& set = DisaggSet(g, d.id);
    for (const auto& v : set) {
      const Variable& var = Bounded(g, v, d.id);
      Expr link;
      for (std::size_t j = 0; j < d.terms.size(); ++j) {
        const int t = static_cast<int>(j) + 1;
        const std::string lam = LambdaName(d.id, t);
        const std::string nu = NuHullName(v, d.id, t);
        const std::string src = TermSource(d.id, t);
        m.variables.push_back(Aux(nu, std::min(0.0, var.lb), std::max(0.0, var.ub),
                                  VarOrigin::kDisaggregatedTrue, v, d.id, t));
        const std::string box = fmt::format("{}_box_{}_{}", d.id, v, t);
        m.add(Row(V(nu), Relation::kGe, Scale(var.lb, V(lam)), box + "_lo"),
              {src, RowRole::kHullBox, box});
        m.add(Row(V(nu), Relation::kLe, Scale(var.ub, V(lam)), box + "_up"),
              {src, RowRole::kHullBox, box});
        link = j == 0 ? V(nu) : link + V(nu);
      }
      const std::string ll = fmt::format("{}_link_{}", d.id, v);
      m.add(Row(V(v), Relation::kEq, link, ll), {d.id, RowRole::kHullLink, ll});
    }
    for (std::size_t j = 0; j < d.terms.size(); ++j) {
      const int t = static_cast<int>(j) + 1;
      const std::string lam = LambdaName(d.id, t);
      std::map<std::string, std::string> nus;
      for (const auto& v : set) nus[v] = NuHullName(v, d.id, t);
      for (const auto& c : d.terms[j].constraints) {
        std::vector<std::pair<Relation, std::string>> rows;
        if (c.relation == Relation::kEq) {
          rows = {{Relation::kLe, c.label + "_le"}, {Relation::kGe, c.label + "_ge"}};
        } else {
          rows = {{c.relation, c.label}};
        }
        auto linear = LinearPerspective(c.body, nus, lam);
        for (const auto& [rel, label] : rows) {
          Constraint r;
          r.body = linear ? *linear : epsilon_perspective(c.body, nus, lam, eps, variant);
          r.relation = rel;
          r.label = label;
          m.add(std::move(r), {TermSource(d.id, t), RowRole::kHullPerspective, c.label});
        }
      }
    }
  }
  Reformulation out;
  out.model = std::move(m);
  out.stats = stats(out.model, g);
  return out;
}

ReformStats stats(const MinlpModel& m, const GdpModel& g) {
  ReformStats s;
  s.method = m.method;
  s.q = static_cast<int>(g.disjunctions.size());
  long sum_nm = 0, sum_n = 0, sum_m = 0, equalities = 0;
  for (const auto& d : g.disjunctions) {
    const int n = static_cast<int>(DisaggSet(g, d.id).size());
    const int mk = static_cast<int>(d.terms.size());
    s.n_per_disjunction[d.id] = n;
    s.m_per_disjunction[d.id] = mk;
    sum_nm += static_cast<long>(n) * mk;
    sum_n += n;
    sum_m += mk;
    for (const auto& t : d.terms) {
      for (const auto& c : t.constraints) equalities += c.relation == Relation::kEq;
    }
  }

  long aux_vars = 0, indicators = 0;
  for (const auto& v : m.variables) {
    switch (v.origin) {
      case VarOrigin::kHatCopy:
      case VarOrigin::kDisaggregatedTrue:
      case VarOrigin::kDisaggregatedFalse: ++aux_vars; break;
      case VarOrigin::kIndicator: ++indicators; break;
      default: break;
    }
  }
  std::set<std::string> counted_rows;
  std::set<std::string> bigm_keys;
  long bigm_rows = 0;
  for (const auto& c : m.constraints) {
    auto it = m.provenance.find(c.label);
    if (it == m.provenance.end()) {
      throw Error(ErrorCode::kProvenanceMissing, "row " + c.label + " has no provenance");
    }
    switch (it->second.role) {
      case RowRole::kHatDefinition:
      case RowRole::kBoxTrue:
      case RowRole::kBoxFalse:
      case RowRole::kLink:
      case RowRole::kHullBox:
      case RowRole::kHullLink: counted_rows.insert(it->second.row); break;
      case RowRole::kBigM:
        ++bigm_rows;
        bigm_keys.insert(it->second.row);
        break;
      default: break;
    }
  }

  long expect_vars = 0, expect_rows = 0;
  switch (m.method) {
    case Method::kTrueFalse:
      s.added_vars = aux_vars;
      s.added_constraints = static_cast<long>(counted_rows.size());
      expect_vars = 3 * sum_nm;
      expect_rows = sum_n + 3 * sum_nm;
      break;
    case Method::kHullEps:
      s.added_vars = aux_vars;
      s.added_constraints = static_cast<long>(counted_rows.size());
      expect_vars = sum_nm;
      expect_rows = sum_n + sum_nm;
      break;
    case Method::kBigM:
      s.added_vars = indicators;
      s.added_constraints = bigm_rows - static_cast<long>(bigm_keys.size());
      expect_vars = sum_m;
      expect_rows = equalities;
      break;
    case Method::kNone:
      return s;
  }
  if (s.added_vars != expect_vars || s.added_constraints != expect_rows) {
    throw Error(ErrorCode::kCountMismatch,
                fmt::format("{}: counted {} variables / {} constraints, expected {} / {}",
                            to_string(m.method), s.added_vars, s.added_constraints, expect_vars,
                            expect_rows));
  }
  return s;
}

Reformulation reformulate(const GdpModel& g, Method method, double eps, HullVariant variant,
                          const BigMPolicy& policy) {
  switch (method) {
    case Method::kTrueFalse: return reformulate_true_false(g);
    case Method::kBigM: return reformulate_bigm(g, policy);
    case Method::kHullEps: return reformulate_hull_eps(g, eps, variant);
    case Method::kNone: break;
  }
  throw Error(ErrorCode::kInvalidModel, "no reformulation method selected");
}

}  // namespace gdpc
