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

#include "gdpc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "gdpc/error.hpp"
#include <nlohmann/json.hpp>

namespace gdpc {
namespace {

double Slack(double a, double b) {
  return kVerifyTol * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

// Comparison truth. mode 0: exact closed comparison; +1: boundary counts as
// true (within tolerance); -1: boundary counts as false.
bool EvalCompare(const Comparison& c, const Binding& b, int mode) {
  const double l = eval_expr(c.lhs, b);
  const double r = eval_expr(c.rhs, b);
  const double s = mode == 0 ? 0.0 : mode * Slack(l, r);
  switch (c.relation) {
    case Relation::kLe: return mode < 0 ? l < r + s : l <= r + s;
    case Relation::kGe: return mode < 0 ? l > r - s : l >= r - s;
    case Relation::kEq: return mode < 0 ? false : std::fabs(l - r) <= std::fabs(s);
  }
  return false;
}

bool EvalCondition(const Condition& c, const Binding& b, int mode) {
  switch (c.kind) {
    case Condition::Kind::kCompare: return EvalCompare(c.cmp, b, mode);
    case Condition::Kind::kAnd:
      return std::all_of(c.parts.begin(), c.parts.end(),
                         [&](const Condition& p) { return EvalCondition(p, b, mode); });
    case Condition::Kind::kOr:
      return std::any_of(c.parts.begin(), c.parts.end(),
                         [&](const Condition& p) { return EvalCondition(p, b, mode); });
    case Condition::Kind::kNot: return !EvalCondition(c.parts.front(), b, -mode);
    case Condition::Kind::kFlag:
      throw Error(ErrorCode::kInvalidModel,
                  fmt::format("condition flag {{{}}} cannot be evaluated", c.flag));
  }
  return false;
}

int CountBlocks(const std::vector<Statement>& stmts);

int CountBlocks(const IfBlock& b) {
  int n = 1;
  for (const Branch& br : b.branches) n += CountBlocks(br.body);
  n += CountBlocks(b.else_body);
  return n;
}

int CountBlocks(const std::vector<Statement>& stmts) {
  int n = 0;
  for (const Statement& s : stmts) {
    if (s.is_if()) n += CountBlocks(s.block);
  }
  return n;
}

class Interpreter {
 public:
  Interpreter(const IfElseProgram& p, const Binding& inputs, const std::vector<int>* forced,
              std::vector<bool>* admissible)
      : forced_(forced), admissible_(admissible) {
    env_ = p.param_binding();
    for (const auto& [k, v] : inputs) env_[k] = v;
    trace_.assign(CountBlocks(p.statements), -1);
    if (admissible_ != nullptr) admissible_->assign(trace_.size(), true);
  }

  void Run(const std::vector<Statement>& stmts) {
    for (const Statement& s : stmts) {
      if (s.is_if()) {
        Block(s.block);
      } else {
        env_[s.target] = eval_expr(s.rhs, env_);
      }
    }
  }

  Binding& env() { return env_; }
  std::vector<int>& trace() { return trace_; }

 private:
  void Block(const IfBlock& b) {
    const int idx = next_++;
    const int n = static_cast<int>(b.branches.size());
    int chosen = -1;
    if (forced_ != nullptr && idx < static_cast<int>(forced_->size()) && (*forced_)[idx] >= 0) {
      chosen = (*forced_)[idx];
      if (chosen > n) {
        throw Error(ErrorCode::kNoBranch, fmt::format("block {} has no branch {}", idx + 1, chosen));
      }
      if (admissible_ != nullptr) (*admissible_)[idx] = Admissible(b, chosen);
    } else {
      chosen = n;
      for (int j = 0; j < n; ++j) {
        if (EvalCondition(b.branches[j].condition, env_, 0)) {
          chosen = j;
          break;
        }
      }
    }
    trace_[idx] = chosen;
    // Blocks nested in the branches are numbered in pre-order.
    int start = next_;
    for (int j = 0; j < chosen; ++j) start += CountBlocks(b.branches[j].body);
    const int end = next_ + CountBlocks(b) - 1;
    next_ = start;
    Run(chosen < n ? b.branches[chosen].body : b.else_body);
    next_ = end;
  }

  // First-match semantics up to boundary overlap: the chosen condition holds
  // (boundary counts) and every earlier one fails (boundary counts as failing).
  bool Admissible(const IfBlock& b, int chosen) const {
    const int n = static_cast<int>(b.branches.size());
    if (chosen < n && !EvalCondition(b.branches[chosen].condition, env_, +1)) return false;
    for (int i = 0; i < chosen && i < n; ++i) {
      if (EvalCondition(b.branches[i].condition, env_, -1)) return false;
    }
    return true;
  }

  const std::vector<int>* forced_;
  std::vector<bool>* admissible_;
  Binding env_;
  std::vector<int> trace_;
  int next_ = 0;
};

Interpretation Interpret(const IfElseProgram& p, const Binding& inputs,
                         const std::vector<int>* forced) {
  std::vector<bool> admissible_flags;
  std::vector<bool>* admissible = forced != nullptr ? &admissible_flags : nullptr;
  Interpretation out;
  Interpreter in(p, inputs, forced, admissible);
  in.Run(p.statements);
  for (const Variable& v : p.decls) {
    auto it = in.env().find(v.name);
    if (it != in.env().end()) out.values[v.name] = it->second;
  }
  out.trace = std::move(in.trace());
  out.admissible = std::move(admissible_flags);
  return out;
}

}  // namespace

Interpretation interpret_traced(const IfElseProgram& p, const Binding& inputs,
                                const std::vector<int>* forced) {
  return Interpret(p, inputs, forced);
}

Binding interpret(const IfElseProgram& p, const Binding& inputs) {
  return Interpret(p, inputs, nullptr).values;
}

bool eval_condition(const Condition& c, const Binding& values) {
  return EvalCondition(c, values, 0);
}

std::vector<Binding> make_grid(const std::vector<Variable>& vars, const GridSpec& spec) {
  std::vector<int> counts;
  double total = 1.0;
  for (const Variable& v : vars) {
    if (!std::isfinite(v.lb) || !std::isfinite(v.ub)) {
      throw Error(ErrorCode::kInvalidModel,
                  fmt::format("cannot sample unbounded variable '{}'", v.name));
    }
    auto it = spec.per_variable.find(v.name);
    counts.push_back(std::max(1, it != spec.per_variable.end() ? it->second : spec.points_per_dim));
    total *= counts.back();
  }
  if (!vars.empty() && total > static_cast<double>(spec.max_points)) {
    const int cap = std::max(
        1, static_cast<int>(std::floor(std::pow(static_cast<double>(spec.max_points),
                                                1.0 / static_cast<double>(vars.size())) +
                                       1e-9)));
    for (int& c : counts) c = std::min(c, cap);
  }
  auto sample = [&](std::size_t i, int k) {
    const Variable& v = vars[i];
    if (counts[i] == 1) return 0.5 * (v.lb + v.ub);
    if (k == counts[i] - 1) return v.ub;
    return v.lb + (v.ub - v.lb) * static_cast<double>(k) / static_cast<double>(counts[i] - 1);
  };
  std::vector<Binding> grid;
  std::vector<int> idx(vars.size(), 0);
  while (true) {
    Binding b;
    for (std::size_t i = 0; i < vars.size(); ++i) b[vars[i].name] = sample(i, idx[i]);
    grid.push_back(std::move(b));
    // Odometer with the last variable moving fastest.
    int i = static_cast<int>(vars.size()) - 1;
    while (i >= 0 && ++idx[i] == counts[i]) idx[i--] = 0;
    if (i < 0) break;
  }
  return grid;
}

bool truth_table_equiv(const LogicProp& prop, const ClauseSet& clauses) {
  std::set<std::string> vars = prop.variables();
  for (const std::string& v : clauses.variables()) vars.insert(v);
  if (vars.size() > kMaxTruthTableVars) {
    throw Error(ErrorCode::kTooLarge,
                fmt::format("truth table over {} variables exceeds {}", vars.size(),
                            kMaxTruthTableVars));
  }
  const std::vector<std::string> names(vars.begin(), vars.end());
  std::map<std::string, bool, std::less<>> values;
  for (unsigned long bits = 0; bits < (1UL << names.size()); ++bits) {
    for (std::size_t i = 0; i < names.size(); ++i) values[names[i]] = ((bits >> i) & 1UL) != 0;
    if (prop.eval(values) != clauses.eval(values)) return false;
  }
  return true;
}

namespace {

nlohmann::ordered_json FailureJson(const VerifyFailure& f) {
  nlohmann::ordered_json j;
  j["point"] = f.point;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : f.inputs) j["inputs"][k] = v;
  j["active"] = nlohmann::ordered_json::object();
  for (const auto& [k, t] : f.active) j["active"][k] = t;
  j["constraint"] = f.constraint;
  j["reason"] = f.reason;
  return j;
}

std::string FailureText(std::string_view side, const VerifyFailure& f) {
  std::string point;
  for (const auto& [k, v] : f.inputs) {
    point += fmt::format("{}{}={}", point.empty() ? "" : " ", k, FormatNumber(v));
  }
  std::string active;
  for (const auto& [k, t] : f.active) {
    active += fmt::format("{}{}:t{}", active.empty() ? "" : " ", k, t);
  }
  return fmt::format("{} failure at point {} ({}) [{}]: {}{}\n", side, f.point, point, active,
                     f.constraint.empty() ? "" : f.constraint + ": ", f.reason);
}

}  // namespace

std::string report_to_json(const EquivalenceReport& r) {
  nlohmann::ordered_json j;
  j["equivalent"] = r.equivalent();
  j["forward"]["points_checked"] = r.forward.points_checked;
  j["forward"]["points_skipped"] = r.forward.points_skipped;
  j["forward"]["failures"] = nlohmann::ordered_json::array();
  for (const VerifyFailure& f : r.forward.failures) j["forward"]["failures"].push_back(FailureJson(f));
  j["backward"]["assignments_total"] = r.backward.assignments_total;
  j["backward"]["assignments_checked"] = r.backward.assignments_checked;
  j["backward"]["feasible_points"] = r.backward.feasible_points;
  j["backward"]["boundary_accepted"] = r.backward.boundary_accepted;
  j["backward"]["failures"] = nlohmann::ordered_json::array();
  for (const VerifyFailure& f : r.backward.failures) {
    j["backward"]["failures"].push_back(FailureJson(f));
  }
  j["bound_clip_warnings"] = nlohmann::ordered_json::array();
  for (const BoundClipWarning& w : r.bound_clip_warnings) {
    j["bound_clip_warnings"].push_back(
        {{"term", w.term}, {"constraint", w.constraint}, {"offending", {w.offending.lo, w.offending.hi}}});
  }
  return j.dump();
}

std::string report_to_text(const EquivalenceReport& r) {
  std::string out = fmt::format("forward: {} failures, backward: {} failures\n",
                                r.forward.failures.size(), r.backward.failures.size());
  out += fmt::format("forward points checked: {} (skipped {})\n", r.forward.points_checked,
                     r.forward.points_skipped);
  out += fmt::format("backward assignments: {} of {}, feasible points: {} (boundary overlap {})\n",
                     r.backward.assignments_checked, r.backward.assignments_total,
                     r.backward.feasible_points, r.backward.boundary_accepted);
  for (const VerifyFailure& f : r.forward.failures) out += FailureText("forward", f);
  for (const VerifyFailure& f : r.backward.failures) out += FailureText("backward", f);
  for (const BoundClipWarning& w : r.bound_clip_warnings) {
    out += fmt::format("warning: bound clip in {} on {}: values in [{}, {}]\n", w.term,
                       w.constraint, FormatNumber(w.offending.lo), FormatNumber(w.offending.hi));
  }
  return out;
}

}  // namespace gdpc
