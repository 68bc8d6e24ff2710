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
#include <charconv>
#include <utility>

#include <fmt/format.h>

#include "gdpc/error.hpp"
#include "gdpc/interval.hpp"
#include "gdpc/normalize.hpp"

namespace gdpc {

namespace {

using Names = std::set<std::string>;

// `p__d3` -> `p`; other names are their own base.
std::string BaseName(const std::string& name) {
  const auto pos = name.rfind("__d");
  if (pos == std::string::npos || pos == 0) return name;
  const std::string_view digits(name.data() + pos + 3, name.size() - pos - 3);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return name;
  return name.substr(0, pos);
}

// Allocates `<base>__d<n>` names and declares them.
class DummyFactory {
 public:
  explicit DummyFactory(IfElseProgram& p) : p_(p) {
    for (const auto& v : p.decls) {
      const std::string base = BaseName(v.name);
      if (base == v.name) continue;
      int n = 0;
      const std::string_view digits(v.name.data() + base.size() + 3,
                                    v.name.size() - base.size() - 3);
      std::from_chars(digits.data(), digits.data() + digits.size(), n);
      next_[base] = std::max(next_[base], n + 1);
    }
  }

  // Fresh dummy standing for a value of `var`; inherits the bounds of the
  // declared variable behind it.
  std::string Make(const std::string& var) {
    const std::string base = BaseName(var);
    int& n = next_[base];
    if (n == 0) n = 1;
    const std::string name = fmt::format("{}__d{}", base, n++);
    const Variable* src = p_.find_decl(var);
    if (!src) src = p_.find_decl(base);
    Variable v = Variable::Continuous(name, src ? src->lb : -kInf, src ? src->ub : kInf,
                                      VarOrigin::kDummy);
    p_.decls.push_back(std::move(v));
    return name;
  }

 private:
  IfElseProgram& p_;
  std::map<std::string, int> next_;
};

Names ReadsOf(const Statement& s);

Names ReadsOfList(const std::vector<Statement>& stmts) {
  Names out;
  for (const auto& s : stmts) {
    auto r = ReadsOf(s);
    out.insert(r.begin(), r.end());
  }
  return out;
}

Names ReadsOf(const Statement& s) {
  if (!s.is_if()) return variables_of(s.rhs);
  Names out;
  for (const auto& br : s.block.branches) {
    CollectReads(br.condition, out);
    auto r = ReadsOfList(br.body);
    out.insert(r.begin(), r.end());
  }
  auto r = ReadsOfList(s.block.else_body);
  out.insert(r.begin(), r.end());
  return out;
}

Names AssignedIn(const std::vector<Statement>& stmts) {
  Names out;
  CollectAssigned(stmts, out);
  return out;
}

// Variables assigned on every path through the statement.
Names MustDefs(const Statement& s) {
  if (!s.is_if()) return {s.target};
  if (!s.block.has_else) return {};
  Names out = AssignedIn(s.block.else_body);
  for (const auto& br : s.block.branches) {
    Names a = AssignedIn(br.body);
    Names keep;
    std::set_intersection(out.begin(), out.end(), a.begin(), a.end(),
                          std::inserter(keep, keep.begin()));
    out = std::move(keep);
  }
  return out;
}

// Variables whose value on entry to `stmts[from..]` may be read.
Names LiveIn(const std::vector<Statement>& stmts, std::size_t from, Names live) {
  for (std::size_t i = stmts.size(); i-- > from;) {
    for (const auto& d : MustDefs(stmts[i])) live.erase(d);
    if (stmts[i].is_if()) {
      const IfBlock& b = stmts[i].block;
      Names uses;
      for (const auto& br : b.branches) {
        CollectReads(br.condition, uses);
        auto l = LiveIn(br.body, 0, live);
        uses.insert(l.begin(), l.end());
      }
      auto l = LiveIn(b.else_body, 0, live);
      uses.insert(l.begin(), l.end());
      live.insert(uses.begin(), uses.end());
    } else {
      auto r = variables_of(stmts[i].rhs);
      live.insert(r.begin(), r.end());
    }
  }
  return live;
}

// --- insert_implicit_else ---------------------------------------------------

void ImplicitElse(std::vector<Statement>& stmts, Names& defined, const Names& live_out) {
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    Statement& s = stmts[i];
    if (!s.is_if()) {
      defined.insert(s.target);
      continue;
    }
    IfBlock& b = s.block;
    const Names live_after = LiveIn(stmts, i + 1, live_out);
    std::vector<std::vector<Statement>*> bodies;
    for (auto& br : b.branches) bodies.push_back(&br.body);
    if (!b.has_else) {
      b.has_else = true;
      b.else_line = s.line;
    }
    bodies.push_back(&b.else_body);

    for (auto* body : bodies) {
      Names inner = defined;
      ImplicitElse(*body, inner, live_after);
    }
    std::vector<Names> assigned;
    Names all;
    for (auto* body : bodies) {
      assigned.push_back(AssignedIn(*body));
      all.insert(assigned.back().begin(), assigned.back().end());
    }
    for (const auto& v : all) {
      std::size_t count = 0;
      for (const auto& a : assigned) count += a.count(v);
      if (count == bodies.size()) continue;
      if (!defined.count(v)) {
        if (count == 1 && !live_after.count(v)) continue;  // branch-local
        throw Error(ErrorCode::kNoPriorDef,
                    fmt::format("line {}: '{}' is not assigned on every branch and has no "
                                "prior definition to fall back on",
                                s.line, v));
      }
      for (std::size_t k = 0; k < bodies.size(); ++k) {
        if (!assigned[k].count(v)) {
          bodies[k]->push_back(Statement::Assign(v, Expr::Var(v), s.line));
        }
      }
    }
    defined.insert(all.begin(), all.end());
  }
}

// --- sequentialize ----------------------------------------------------------

using Env = std::map<std::string, std::string>;

Expr RenameExpr(const Expr& e, const Env& env) {
  std::map<std::string, std::string> m(env.begin(), env.end());
  return rename(e, m);
}

Condition RenameCondition(const Condition& c, const Env& env) {
  Condition out = c;
  if (c.kind == Condition::Kind::kCompare) {
    out.cmp.lhs = RenameExpr(c.cmp.lhs, env);
    out.cmp.rhs = RenameExpr(c.cmp.rhs, env);
    return out;
  }
  for (auto& part : out.parts) part = RenameCondition(part, env);
  return out;
}

std::string Lookup(const Env& env, const std::string& v) {
  auto it = env.find(v);
  return it == env.end() ? v : it->second;
}

void Sequentialize(std::vector<Statement>& stmts, Env& env, const Env* final_names,
                   DummyFactory& dummies) {
  std::map<std::string, std::size_t> last_def;
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    if (stmts[i].is_if()) {
      for (const auto& v : AssignedIn({stmts[i]})) last_def[v] = i;
    } else {
      last_def[stmts[i].target] = i;
    }
  }
  auto target_name = [&](const std::string& v, std::size_t i) {
    if (last_def[v] == i) {
      if (!final_names) return v;
      auto it = final_names->find(v);
      if (it != final_names->end()) return it->second;
    }
    return dummies.Make(v);
  };
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    Statement& s = stmts[i];
    if (!s.is_if()) {
      s.rhs = RenameExpr(s.rhs, env);
      const std::string v = s.target;
      s.target = target_name(v, i);
      env[v] = s.target;
      continue;
    }
    IfBlock& b = s.block;
    Env out;
    for (const auto& v : AssignedIn({s})) out[v] = target_name(v, i);
    for (auto& name : b.disaggregate) {
      auto it = out.find(name);
      name = it != out.end() ? it->second : Lookup(env, name);
    }
    for (auto& br : b.branches) {
      br.condition = RenameCondition(br.condition, env);
      Env inner = env;
      Sequentialize(br.body, inner, &out, dummies);
    }
    Env inner = env;
    Sequentialize(b.else_body, inner, &out, dummies);
    for (const auto& [v, name] : out) env[v] = name;
  }
}

// --- flatten_nested ---------------------------------------------------------

Box DeclBox(const IfElseProgram& p) {
  Box box;
  for (const auto& v : p.decls) box[v.name] = {v.lb, v.ub};
  for (const auto& [n, v] : p.params) box[n] = {v, v};
  return box;
}

class Flattener {
 public:
  explicit Flattener(IfElseProgram& p) : p_(p), dummies_(p) {}

  std::vector<Statement> Run(std::vector<Statement> stmts) { return FlattenList(std::move(stmts)); }

 private:
  std::vector<Statement> FlattenList(std::vector<Statement> stmts) {
    std::vector<Statement> out;
    for (auto& s : stmts) {
      if (!s.is_if()) {
        out.push_back(std::move(s));
        continue;
      }
      FlattenBlock(std::move(s), out);
    }
    return out;
  }

  void FlattenBlock(Statement s, std::vector<Statement>& out) {
    IfBlock& b = s.block;
    std::vector<std::vector<Statement>*> bodies;
    for (auto& br : b.branches) bodies.push_back(&br.body);
    bodies.push_back(&b.else_body);
    for (auto* body : bodies) *body = FlattenList(std::move(*body));

    // Outputs: names assigned on every branch.
    Names outputs = AssignedIn(*bodies[0]);
    for (std::size_t k = 1; k < bodies.size(); ++k) {
      Names a = AssignedIn(*bodies[k]);
      Names keep;
      std::set_intersection(outputs.begin(), outputs.end(), a.begin(), a.end(),
                            std::inserter(keep, keep.begin()));
      outputs = std::move(keep);
    }

    for (auto* body : bodies) {
      std::vector<Statement> kept;
      Names kept_names;
      for (auto& st : *body) {
        const Names reads = ReadsOf(st);
        const bool reads_kept = std::any_of(reads.begin(), reads.end(),
                                            [&](const auto& r) { return kept_names.count(r); });
        if (!st.is_if()) {
          if (outputs.count(st.target) || reads_kept) {
            kept_names.insert(st.target);
            kept.push_back(std::move(st));
          } else {
            CheckHoistBounds(st.target, {st.rhs}, st.line);
            out.push_back(std::move(st));
          }
          continue;
        }
        if (reads_kept) {
          throw Error(ErrorCode::kInvalidModel,
                      fmt::format("line {}: nested block reads a value computed in its "
                                  "enclosing branch after an output assignment; reorder the "
                                  "statements",
                                  st.line));
        }
        HoistInner(std::move(st), outputs, kept, out);
      }
      *body = std::move(kept);
    }

    bool any = false;
    for (auto* body : bodies) any = any || !body->empty();
    if (any) out.push_back(std::move(s));
  }

  // Moves an already flat inner block to `out`; outputs of the enclosing
  // block it writes are redirected to fresh dummies copied back in `kept`.
  void HoistInner(Statement inner, const Names& outer_outputs, std::vector<Statement>& kept,
                  std::vector<Statement>& out) {
    IfBlock& b = inner.block;
    std::vector<std::vector<Statement>*> bodies;
    for (auto& br : b.branches) bodies.push_back(&br.body);
    bodies.push_back(&b.else_body);
    for (const auto& v : AssignedIn({inner})) {
      if (!outer_outputs.count(v)) continue;
      const std::string d = dummies_.Make(v);
      std::vector<Expr> values;
      for (auto* body : bodies) {
        for (auto& st : *body) {
          if (st.target == v) {
            st.target = d;
            values.push_back(st.rhs);
          }
        }
      }
      for (auto& name : b.disaggregate) {
        if (name == v) name = d;
      }
      CheckHoistBounds(d, values, inner.line);
      kept.push_back(Statement::Assign(v, Expr::Var(d), inner.line));
    }
    out.push_back(std::move(inner));
  }

  // An always-evaluated assignment may now produce values its target's
  // bounds exclude. Dummy bounds are widened to the hull when finite.
  void CheckHoistBounds(const std::string& target, const std::vector<Expr>& values, int line) {
    Variable* decl = nullptr;
    for (auto& v : p_.decls) {
      if (v.name == target) decl = &v;
    }
    if (!decl) return;
    const Box box = DeclBox(p_);
    Interval hull{kInf, -kInf};
    bool known = true;
    for (const auto& e : values) {
      try {
        const Interval iv = interval_bounds(e, box);
        hull.lo = std::min(hull.lo, iv.lo);
        hull.hi = std::max(hull.hi, iv.hi);
      } catch (const Error&) {
        known = false;
      }
    }
    if (!known || values.empty()) return;
    if (hull.lo >= decl->lb && hull.hi <= decl->ub) return;
    std::string msg = fmt::format("hoisted assignment to '{}' is now always evaluated and may "
                                  "take values in [{}, {}] outside its bounds [{}, {}]",
                                  target, FormatNumber(hull.lo), FormatNumber(hull.hi),
                                  FormatNumber(decl->lb), FormatNumber(decl->ub));
    if (decl->origin == VarOrigin::kDummy && hull.bounded()) {
      decl->lb = std::min(decl->lb, hull.lo);
      decl->ub = std::max(decl->ub, hull.hi);
      msg += "; dummy bounds widened";
    }
    p_.warnings.push_back({"D_HOIST_BOUNDS", Diagnostic::Severity::kWarning, msg, line});
  }

  IfElseProgram& p_;
  DummyFactory dummies_;
};

}  // namespace

IfElseProgram insert_implicit_else(const IfElseProgram& p) {
  IfElseProgram out = p;
  Names defined;
  ImplicitElse(out.statements, defined, {});
  return out;
}

IfElseProgram sequentialize(const IfElseProgram& p) {
  IfElseProgram out = p;
  DummyFactory dummies(out);
  Env env;
  Sequentialize(out.statements, env, nullptr, dummies);
  return out;
}

IfElseProgram flatten_nested(const IfElseProgram& p) {
  IfElseProgram out = p;
  Flattener f(out);
  out.statements = f.Run(std::move(out.statements));
  return out;
}

}  // namespace gdpc
