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

// Forward and backward equivalence checks between a GDP (or the if/else
// program it came from) and a reformulated MINLP.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "gdpc/error.hpp"
#include "gdpc/reformulate.hpp"
#include "gdpc/verify.hpp"

namespace gdpc {
namespace {

constexpr int kSamplesPerCopy = 17;
constexpr int kBisectionSteps = 100;
constexpr long kMaxCopyCandidates = 4096;

bool Close(double a, double b) {
  return std::fabs(a - b) <= kVerifyTol * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

std::string TermSource(const std::string& k, int t) { return fmt::format("{}/t{}", k, t); }

// Holds at the point, treating undefined expressions as violations.
bool Holds(const Constraint& c, const Binding& b) {
  try {
    return c.satisfied(b, kVerifyTol);
  } catch (const Error&) {
    return false;
  }
}

struct ClipEvent {
  std::string constraint;  // GDP row label of the clipped equality
  double value = 0.0;      // value the equality asked for
};

// A feasible value for every disaggregated variable of one inactive term.
struct CopySolution {
  bool found = false;
  Binding values;
  std::vector<ClipEvent> clips;
};

struct Assignment {
  std::string target;
  Expr rhs;
  std::string label;
};

struct TermInfo {
  std::vector<Assignment> assignments;  // triangular equalities target = rhs
  std::vector<const Constraint*> others;
  std::vector<std::string> free;        // disaggregated, not a target
  std::vector<std::string> context;     // shared variables the term reads
};

struct Violation {
  std::string constraint;
  std::string reason;
};

struct Outcome {
  bool ok() const { return violations.empty(); }
  std::vector<Violation> violations;
  std::vector<std::pair<std::string, ClipEvent>> clips;  // (term source, event)
};

// Completes a point of the GDP to a point of the MINLP and checks every row.
class Engine {
 public:
  Engine(const GdpModel& g, const MinlpModel& m) : g_(g), m_(m) {
    for (const Disjunction& d : g.disjunctions) {
      const auto it = g.disagg_sets.find(d.id);
      const std::vector<std::string> disagg =
          it == g.disagg_sets.end() ? std::vector<std::string>{} : it->second;
      std::vector<TermInfo> terms;
      for (const DisjunctTerm& t : d.terms) terms.push_back(AnalyzeTerm(t, disagg));
      terms_[d.id] = std::move(terms);
    }
    for (const Variable& v : m.variables) {
      switch (v.origin) {
        case VarOrigin::kUser:
        case VarOrigin::kDummy: break;
        default:
          if (!v.aux) {
            throw Error(ErrorCode::kProvenanceMissing,
                        fmt::format("auxiliary variable '{}' has no provenance", v.name));
          }
          aux_.push_back(&v);
      }
    }
    for (const Constraint& c : m.constraints) {
      const auto p = m.provenance.find(c.label);
      if (p == m.provenance.end()) {
        throw Error(ErrorCode::kProvenanceMissing,
                    fmt::format("row '{}' has no provenance", c.label));
      }
      rows_.push_back(Row{&c, &p->second, variables_of(c.body)});
    }
    // Term rows first: they reject wrong branch choices cheaply.
    std::stable_sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) {
      return (a.prov->role == RowRole::kTermConstraint || a.prov->role == RowRole::kBigM) >
             (b.prov->role == RowRole::kTermConstraint || b.prov->role == RowRole::kBigM);
    });
  }

  // `x` holds every GDP variable; `active` the active term of every
  // disjunction. With allow_clips, rows that fail only because an inactive
  // copy was clipped to its bounds are reported as clip events instead.
  // Stops at the first violation unless collect_all is set.
  Outcome Check(const Binding& x, const std::map<std::string, int>& active, bool allow_clips,
                bool collect_all) {
    Outcome out;
    collect_all_ = collect_all;
    Binding point;
    std::set<std::string> pending;
    for (const Variable& v : m_.variables) {
      if (!v.aux) {
        const auto it = x.find(v.name);
        if (it == x.end()) {
          Fail(out, "", fmt::format("no value for '{}'", v.name));
          return out;
        }
        point[v.name] = it->second;
        continue;
      }
      const AuxInfo& a = *v.aux;
      const bool on = active.at(a.disjunction) == a.term;
      switch (v.origin) {
        case VarOrigin::kIndicator: point[v.name] = on ? 1.0 : 0.0; break;
        case VarOrigin::kDisaggregatedTrue: point[v.name] = on ? x.at(a.source) : 0.0; break;
        case VarOrigin::kHatCopy:
          if (on) {
            point[v.name] = x.at(a.source);
          } else {
            pending.insert(v.name);
          }
          break;
        case VarOrigin::kDisaggregatedFalse:
          if (on) {
            point[v.name] = 0.0;
          } else {
            pending.insert(v.name);
          }
          break;
        default: break;
      }
    }
    auto mentions_pending = [&](const Row& r) {
      return std::any_of(r.vars.begin(), r.vars.end(),
                         [&](const std::string& v) { return pending.count(v) > 0; });
    };
    for (const Row& r : rows_) {
      if (!mentions_pending(r) && !Holds(*r.c, point) && Violated(out, r, point)) return out;
    }
    if (pending.empty()) {
      CheckBounds(out, point);
      return out;
    }

    // Inactive copies: solve each inactive term's constraints.
    std::set<std::string> excused;
    for (const Disjunction& d : g_.disjunctions) {
      for (int t = 1; t <= static_cast<int>(d.terms.size()); ++t) {
        if (active.at(d.id) == t) continue;
        const CopySolution& sol = SolveCopy(d.id, t, x);
        if (!sol.found) {
          Fail(out, "", fmt::format("no feasible inactive copy for term {}", TermSource(d.id, t)));
          return out;
        }
        if (!sol.clips.empty() && !allow_clips) {
          Fail(out, sol.clips.front().constraint, "inactive copy clipped to bounds");
          return out;
        }
        for (const ClipEvent& e : sol.clips) {
          out.clips.emplace_back(TermSource(d.id, t), e);
          excused.insert(TermSource(d.id, t) + "#" + e.constraint);
        }
        for (const auto& [var, value] : sol.values) {
          point[HatName(var, d.id, t)] = value;
          point[NuFalseName(var, d.id, t)] = value;
        }
      }
    }
    for (const Row& r : rows_) {
      if (!mentions_pending(r)) continue;
      if (Holds(*r.c, point)) continue;
      if (r.prov->role == RowRole::kTermConstraint &&
          excused.count(r.prov->source + "#" + r.prov->row) > 0) {
        continue;
      }
      if (Violated(out, r, point)) return out;
    }
    CheckBounds(out, point);
    return out;
  }

 private:
  struct Row {
    const Constraint* c;
    const Provenance* prov;
    std::set<std::string> vars;
  };

  // Records a violation; true when checking should stop.
  bool Fail(Outcome& out, std::string constraint, std::string reason) const {
    out.violations.push_back(Violation{std::move(constraint), std::move(reason)});
    return !collect_all_;
  }

  bool Violated(Outcome& out, const Row& r, const Binding& point) const {
    try {
      return Fail(out, r.c->label, fmt::format("violated by {:.3g}", r.c->violation(point)));
    } catch (const Error& e) {
      return Fail(out, r.c->label, fmt::format("undefined ({})", e.what()));
    }
  }

  void CheckBounds(Outcome& out, const Binding& point) const {
    for (const Variable& v : m_.variables) {
      const double val = point.at(v.name);
      const double slack = kVerifyTol * (1.0 + std::fabs(val));
      if ((val < v.lb - slack || val > v.ub + slack) &&
          Fail(out, "", fmt::format("'{}' = {} outside [{}, {}]", v.name, FormatNumber(val),
                                    FormatNumber(v.lb), FormatNumber(v.ub)))) {
        return;
      }
    }
  }

  static TermInfo AnalyzeTerm(const DisjunctTerm& t, const std::vector<std::string>& disagg) {
    TermInfo info;
    const std::set<std::string> dset(disagg.begin(), disagg.end());
    std::set<std::string> targets, reads;
    for (const Constraint& c : t.constraints) {
      for (const std::string& v : variables_of(c.body)) reads.insert(v);
      if (c.relation == Relation::kEq && c.body.op() == Op::kSub && c.body.arg(0).is_var()) {
        const std::string& target = c.body.arg(0).name();
        if (dset.count(target) > 0 && targets.count(target) == 0 &&
            !mentions(c.body.arg(1), target)) {
          targets.insert(target);
          info.assignments.push_back(Assignment{target, c.body.arg(1), c.label});
          continue;
        }
      }
      info.others.push_back(&c);
    }
    for (const std::string& v : disagg) {
      if (targets.count(v) == 0) info.free.push_back(v);
    }
    for (const std::string& v : reads) {
      if (dset.count(v) == 0) info.context.push_back(v);
    }
    return info;
  }

  // Candidate values of one free copy: its current value, the bounds, a
  // uniform sample, and the roots of single-variable comparisons.
  std::vector<double> Candidates(const TermInfo& info, const std::string& var, const Binding& x) {
    const Variable* v = g_.find_variable(var);
    std::vector<double> out;
    auto add = [&](double c) {
      if (std::isfinite(c) && c >= v->lb && c <= v->ub &&
          std::find(out.begin(), out.end(), c) == out.end()) {
        out.push_back(c);
      }
    };
    add(x.at(var));
    add(v->lb);
    add(v->ub);
    add(0.5 * (v->lb + v->ub));
    std::vector<double> samples;
    for (int i = 0; i < kSamplesPerCopy; ++i) {
      samples.push_back(v->lb + (v->ub - v->lb) * i / (kSamplesPerCopy - 1));
      add(samples.back());
    }
    const std::set<std::string> free(info.free.begin(), info.free.end());
    for (const Constraint* c : info.others) {
      const std::set<std::string> vars = variables_of(c->body);
      const bool single = std::all_of(vars.begin(), vars.end(), [&](const std::string& w) {
        return w == var || (free.count(w) == 0 && x.count(w) > 0 &&
                            std::none_of(info.assignments.begin(), info.assignments.end(),
                                         [&](const Assignment& a) { return a.target == w; }));
      });
      if (!single || vars.count(var) == 0) continue;
      Binding b = x;
      auto f = [&](double t) {
        b[var] = t;
        return eval_expr(c->body, b);
      };
      for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        try {
          double lo = samples[i], hi = samples[i + 1];
          double flo = f(lo), fhi = f(hi);
          if ((flo > 0) == (fhi > 0)) continue;
          for (int s = 0; s < kBisectionSteps; ++s) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if ((fm > 0) == (flo > 0)) {
              lo = mid;
              flo = fm;
            } else {
              hi = mid;
            }
          }
          add(lo);
          add(hi);
        } catch (const Error&) {
        }
      }
    }
    return out;
  }

  const CopySolution& SolveCopy(const std::string& k, int t, const Binding& x) {
    const TermInfo& info = terms_.at(k)[t - 1];
    std::vector<double> key;
    for (const std::string& v : info.context) key.push_back(x.count(v) ? x.at(v) : 0.0);
    for (const std::string& v : info.free) key.push_back(x.at(v));
    auto [it, inserted] = cache_.try_emplace(std::make_tuple(k, t, key));
    if (!inserted) return it->second;
    CopySolution& sol = it->second;

    std::vector<std::vector<double>> cands;
    for (const std::string& v : info.free) cands.push_back(Candidates(info, v, x));
    std::vector<std::size_t> idx(cands.size(), 0);
    std::optional<CopySolution> clipped;
    for (long tries = 0; tries < kMaxCopyCandidates; ++tries) {
      Binding b = x;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        if (cands[i].empty()) return sol;
        b[info.free[i]] = cands[i][idx[i]];
      }
      CopySolution attempt;
      if (Substitute(info, b, attempt.clips) &&
          std::all_of(info.others.begin(), info.others.end(),
                      [&](const Constraint* c) { return Holds(*c, b); })) {
        attempt.found = true;
        for (const std::string& v : g_.disagg_sets.at(k)) attempt.values[v] = b.at(v);
        if (attempt.clips.empty()) {
          sol = std::move(attempt);
          return sol;
        }
        if (!clipped) clipped = std::move(attempt);
      }
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == cands[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    if (clipped) sol = std::move(*clipped);
    return sol;
  }

  // Evaluates the term's equalities in dependency order, clamping each
  // target to its bounds. False when an equality cannot be evaluated.
  bool Substitute(const TermInfo& info, Binding& b, std::vector<ClipEvent>& clips) const {
    std::set<std::string> unresolved;
    for (const Assignment& a : info.assignments) unresolved.insert(a.target);
    while (!unresolved.empty()) {
      bool progress = false;
      for (const Assignment& a : info.assignments) {
        if (unresolved.count(a.target) == 0) continue;
        const std::set<std::string> reads = variables_of(a.rhs);
        if (std::any_of(reads.begin(), reads.end(),
                        [&](const std::string& r) { return unresolved.count(r) > 0; })) {
          continue;
        }
        double value;
        try {
          value = eval_expr(a.rhs, b);
        } catch (const Error&) {
          return false;
        }
        const Variable* v = g_.find_variable(a.target);
        const double clamped = std::clamp(value, v->lb, v->ub);
        if (!Close(clamped, value)) clips.push_back(ClipEvent{a.label, value});
        b[a.target] = clamped;
        unresolved.erase(a.target);
        progress = true;
      }
      if (!progress) return false;
    }
    return true;
  }

  const GdpModel& g_;
  const MinlpModel& m_;
  std::map<std::string, std::vector<TermInfo>> terms_;
  std::vector<const Variable*> aux_;
  bool collect_all_ = false;
  std::vector<Row> rows_;
  std::map<std::tuple<std::string, int, std::vector<double>>, CopySolution> cache_;
};

void RecordClips(EquivalenceReport& r, const Outcome& o) {
  for (const auto& [term, e] : o.clips) {
    auto it = std::find_if(r.bound_clip_warnings.begin(), r.bound_clip_warnings.end(),
                           [&](const BoundClipWarning& w) {
                             return w.term == term && w.constraint == e.constraint;
                           });
    if (it == r.bound_clip_warnings.end()) {
      r.bound_clip_warnings.push_back(BoundClipWarning{term, e.constraint, {e.value, e.value}});
    } else {
      it->offending.lo = std::min(it->offending.lo, e.value);
      it->offending.hi = std::max(it->offending.hi, e.value);
    }
  }
}

// The first term whose constraints all hold, or 0.
int FirstHoldingTerm(const Disjunction& d, const Binding& x) {
  for (std::size_t j = 0; j < d.terms.size(); ++j) {
    const auto& cs = d.terms[j].constraints;
    if (std::all_of(cs.begin(), cs.end(), [&](const Constraint& c) { return Holds(c, x); })) {
      return static_cast<int>(j) + 1;
    }
  }
  return 0;
}

bool InBox(const std::vector<Variable>& decls, const Binding& values) {
  for (const Variable& v : decls) {
    const auto it = values.find(v.name);
    if (it == values.end()) continue;
    const double slack = kVerifyTol * (1.0 + std::fabs(it->second));
    if (it->second < v.lb - slack || it->second > v.ub + slack) return false;
  }
  return true;
}

std::vector<Variable> InputDecls(const IfElseProgram& p) {
  std::vector<Variable> out;
  for (const std::string& name : p.input_variables()) out.push_back(*p.find_decl(name));
  return out;
}

// Original-program values that the normalized run disagrees with.
std::optional<std::string> Mismatch(const Binding& original, const Binding& normalized) {
  for (const auto& [name, value] : original) {
    const auto it = normalized.find(name);
    if (it == normalized.end() || !Close(it->second, value)) {
      return fmt::format("'{}' is {} in the source program but {}", name, FormatNumber(value),
                         it == normalized.end() ? "unset" : FormatNumber(it->second));
    }
  }
  return std::nullopt;
}

// Interpreter results for one grid point; nullopt when the source program is
// undefined there or leaves its declared box.
struct PointRun {
  Binding original;
  Interpretation normalized;
  std::optional<std::string> normalized_error;
};

std::optional<PointRun> RunPoint(const Compilation& c, const Binding& inputs) {
  PointRun run;
  try {
    run.original = interpret(c.original, inputs);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!InBox(c.original.decls, run.original)) return std::nullopt;
  try {
    run.normalized = interpret_traced(c.flattened, inputs);
  } catch (const Error& e) {
    run.normalized_error = fmt::format("normalized program undefined: {}", e.what());
  }
  return run;
}

}  // namespace

EquivalenceReport check_forward(const Compilation& c, const MinlpModel& m, const GridSpec& grid) {
  EquivalenceReport report;
  Engine engine(c.gdp(), m);
  const std::vector<Binding> points = make_grid(InputDecls(c.original), grid);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Binding& inputs = points[i];
    VerifyFailure failure{static_cast<long>(i), inputs, {}, {}, {}};
    const std::optional<PointRun> run = RunPoint(c, inputs);
    if (!run) {
      ++report.forward.points_skipped;
      continue;
    }
    ++report.forward.points_checked;
    if (run->normalized_error) {
      failure.reason = *run->normalized_error;
      report.forward.failures.push_back(std::move(failure));
      continue;
    }
    const Binding& x = run->normalized.values;
    if (auto diff = Mismatch(run->original, x)) {
      failure.reason = "normalization changed the result: " + *diff;
      report.forward.failures.push_back(std::move(failure));
      continue;
    }
    for (const BlockLowering& b : c.lowering.blocks) {
      failure.active[b.disjunction] = run->normalized.trace.at(b.block - 1) + 1;
    }
    bool complete = true;
    for (const Disjunction& d : c.gdp().disjunctions) {
      if (failure.active.count(d.id) > 0) continue;
      failure.active[d.id] = FirstHoldingTerm(d, x);
      if (failure.active[d.id] == 0) {
        failure.reason = fmt::format("no term of {} holds", d.id);
        complete = false;
        break;
      }
    }
    if (!complete) {
      report.forward.failures.push_back(std::move(failure));
      continue;
    }
    const Outcome o = engine.Check(x, failure.active, /*allow_clips=*/true, /*collect_all=*/true);
    RecordClips(report, o);
    for (const Violation& v : o.violations) {
      failure.constraint = v.constraint;
      failure.reason = v.reason;
      report.forward.failures.push_back(failure);
    }
  }
  return report;
}

EquivalenceReport check_backward(const Compilation& c, const MinlpModel& m, const GridSpec& grid) {
  EquivalenceReport report;
  const GdpModel& g = c.gdp();
  Engine engine(g, m);

  double total = 1.0;
  for (const Disjunction& d : g.disjunctions) total *= static_cast<double>(d.terms.size());
  if (total > static_cast<double>(kMaxBinaryAssignments)) {
    throw Error(ErrorCode::kTooManyBinaries,
                fmt::format("{} binary assignments exceed the limit of {}", total,
                            kMaxBinaryAssignments));
  }
  std::map<std::pair<std::string, int>, std::string> lambda;
  for (const Variable& v : m.variables) {
    if (v.origin == VarOrigin::kIndicator && v.aux) {
      lambda[{v.aux->disjunction, v.aux->term}] = v.name;
    }
  }
  std::vector<const Constraint*> logic_rows;
  for (const Constraint& row : m.constraints) {
    const auto p = m.provenance.find(row.label);
    if (p == m.provenance.end()) {
      throw Error(ErrorCode::kProvenanceMissing,
                  fmt::format("row '{}' has no provenance", row.label));
    }
    if (p->second.role == RowRole::kLogicClause) logic_rows.push_back(&row);
  }

  // Assignments surviving the clause filter.
  std::vector<std::map<std::string, int>> assignments;
  std::vector<int> idx(g.disjunctions.size(), 0);
  while (!g.disjunctions.empty()) {
    ++report.backward.assignments_total;
    std::map<std::string, int> active;
    Binding bits;
    for (std::size_t k = 0; k < g.disjunctions.size(); ++k) {
      const Disjunction& d = g.disjunctions[k];
      active[d.id] = idx[k] + 1;
      for (int t = 1; t <= static_cast<int>(d.terms.size()); ++t) {
        const auto it = lambda.find({d.id, t});
        if (it != lambda.end()) bits[it->second] = t == idx[k] + 1 ? 1.0 : 0.0;
      }
    }
    if (std::all_of(logic_rows.begin(), logic_rows.end(),
                    [&](const Constraint* row) { return Holds(*row, bits); })) {
      assignments.push_back(std::move(active));
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == static_cast<int>(g.disjunctions[k].terms.size())) {
      idx[k++] = 0;
    }
    if (k == idx.size()) break;
  }
  report.backward.assignments_checked = static_cast<long>(assignments.size());

  const std::vector<Binding> points = make_grid(InputDecls(c.original), grid);
  std::vector<std::optional<PointRun>> runs;
  for (const Binding& p : points) runs.push_back(RunPoint(c, p));

  for (const std::map<std::string, int>& active : assignments) {
    std::vector<int> forced(c.lowering.blocks.size(), -1);
    for (const BlockLowering& b : c.lowering.blocks) forced[b.block - 1] = active.at(b.disjunction) - 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!runs[i] || runs[i]->normalized_error) continue;
      Interpretation forced_run;
      try {
        forced_run = interpret_traced(c.flattened, points[i], &forced);
      } catch (const Error&) {
        continue;  // the forced chain is undefined here: no MINLP point
      }
      if (!engine.Check(forced_run.values, active, /*allow_clips=*/false, /*collect_all=*/false)
               .ok()) {
        continue;
      }
      ++report.backward.feasible_points;
      VerifyFailure failure{static_cast<long>(i), points[i], active, {}, {}};
      if (forced_run.trace == runs[i]->normalized.trace) {
        if (auto diff = Mismatch(runs[i]->original, forced_run.values)) {
          failure.reason = "projection differs from the source program: " + *diff;
          report.backward.failures.push_back(std::move(failure));
        }
        continue;
      }
      const auto bad = std::find(forced_run.admissible.begin(), forced_run.admissible.end(), false);
      if (bad == forced_run.admissible.end()) {
        ++report.backward.boundary_accepted;
        continue;
      }
      const int block = static_cast<int>(bad - forced_run.admissible.begin()) + 1;
      failure.reason = fmt::format("feasible assignment takes branch {} of block {} against "
                                   "first-match selection",
                                   forced[block - 1] + 1, block);
      report.backward.failures.push_back(std::move(failure));
    }
  }
  std::stable_sort(report.backward.failures.begin(), report.backward.failures.end(),
                   [](const VerifyFailure& a, const VerifyFailure& b) { return a.point < b.point; });
  return report;
}

EquivalenceReport verify(const Compilation& c, const MinlpModel& m, const GridSpec& grid) {
  EquivalenceReport report = check_forward(c, m, grid);
  report.backward = check_backward(c, m, grid).backward;
  return report;
}

EquivalenceReport check_forward_gdp(const GdpModel& g, const MinlpModel& m, const GridSpec& grid) {
  EquivalenceReport report;
  Engine engine(g, m);
  std::vector<Variable> vars;
  for (const Variable& v : g.variables) {
    if (v.kind == VarKind::kContinuous) vars.push_back(v);
  }
  const std::vector<Binding> points = make_grid(vars, grid);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Binding& x = points[i];
    VerifyFailure failure{static_cast<long>(i), x, {}, {}, {}};
    bool defined = std::all_of(g.global_constraints.begin(), g.global_constraints.end(),
                               [&](const Constraint& c) { return Holds(c, x); });
    for (const Disjunction& d : g.disjunctions) {
      if (!defined) break;
      failure.active[d.id] = FirstHoldingTerm(d, x);
      defined = failure.active[d.id] != 0;
    }
    if (!defined) {
      ++report.forward.points_skipped;
      continue;
    }
    ++report.forward.points_checked;
    const Outcome o = engine.Check(x, failure.active, /*allow_clips=*/true, /*collect_all=*/true);
    RecordClips(report, o);
    for (const Violation& v : o.violations) {
      failure.constraint = v.constraint;
      failure.reason = v.reason;
      report.forward.failures.push_back(failure);
    }
  }
  return report;
}

}  // namespace gdpc
