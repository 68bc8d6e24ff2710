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

#ifndef GDPC_VERIFY_HPP_
#define GDPC_VERIFY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdpc/interval.hpp"
#include "gdpc/model.hpp"
#include "gdpc/normalize.hpp"
#include "gdpc/program.hpp"

namespace gdpc {

// --- interpreter ------------------------------------------------------------

struct Interpretation {
  // Final values of the declared variables (parameters excluded). Variables
  // only assigned on a path that was not taken are absent.
  Binding values;
  // Index of the branch taken by each executed if-block, in pre-order; the
  // else branch has index branches.size(). Blocks that were not reached get -1.
  std::vector<int> trace;
  // Forced runs only: whether the forced branch of each block is one that
  // first-match selection could take when boundaries count both ways.
  std::vector<bool> admissible;
};

// Executes the program with first-match branch selection and closed
// comparisons. When `forced` is given, block i takes branch forced[i]
// without evaluating its conditions. Throws E_DOMAIN from expression
// evaluation and E_NO_BRANCH when no branch applies.
Interpretation interpret_traced(const IfElseProgram& p, const Binding& inputs,
                                const std::vector<int>* forced = nullptr);

Binding interpret(const IfElseProgram& p, const Binding& inputs);

// Truth of a condition under closed comparisons (flags are not allowed).
bool eval_condition(const Condition& c, const Binding& values);

// --- grids ------------------------------------------------------------------

struct GridSpec {
  int points_per_dim = 10;
  std::map<std::string, int> per_variable;  // overrides points_per_dim
  long max_points = 100000;
};

// Uniform samples over [lb, ub] for each named variable (one sample sits at
// the midpoint). When the product exceeds max_points the per-variable count
// is reduced uniformly. Throws E_INVALID_MODEL for unbounded variables.
std::vector<Binding> make_grid(const std::vector<Variable>& vars, const GridSpec& spec);

// --- reports ----------------------------------------------------------------

inline constexpr double kVerifyTol = 1e-9;

struct VerifyFailure {
  long point = 0;                     // grid point index
  Binding inputs;                     // grid point
  std::map<std::string, int> active;  // disjunction -> active term (1-based)
  std::string constraint;             // violated row, when there is one
  std::string reason;
};

struct BoundClipWarning {
  std::string term;        // "k1/t2"
  std::string constraint;  // source row label
  Interval offending;      // range of the clipped values
};

struct EquivalenceReport {
  struct Forward {
    long points_checked = 0;
    long points_skipped = 0;  // undefined or outside the declared box
    std::vector<VerifyFailure> failures;
  } forward;
  struct Backward {
    long assignments_total = 0;    // satisfying the exactly-one groups
    long assignments_checked = 0;  // also satisfying the logic clauses
    long feasible_points = 0;
    long boundary_accepted = 0;
    std::vector<VerifyFailure> failures;
  } backward;
  std::vector<BoundClipWarning> bound_clip_warnings;

  bool equivalent() const { return forward.failures.empty() && backward.failures.empty(); }
};

// Embeds every grid point of the program's inputs into the MINLP: branch
// choice from the interpreter, auxiliaries from the activation identity,
// inactive copies by triangular substitution. Throws E_PROVENANCE_MISSING.
EquivalenceReport check_forward(const Compilation& c, const MinlpModel& m,
                                const GridSpec& grid = {});

// Enumerates the binary assignments allowed by the exactly-one groups and
// logic clauses; every feasible completed point must project to the
// interpreter's values, up to boundary overlap. Throws E_TOO_MANY_BINARIES
// beyond 2^16 assignments.
EquivalenceReport check_backward(const Compilation& c, const MinlpModel& m,
                                 const GridSpec& grid = {});

// Forward then backward, merged.
EquivalenceReport verify(const Compilation& c, const MinlpModel& m, const GridSpec& grid = {});

// Forward check for a model given directly as a GDP: grid over every GDP
// variable, the first term whose constraints hold is active (points where a
// disjunction has none are skipped).
EquivalenceReport check_forward_gdp(const GdpModel& g, const MinlpModel& m,
                                    const GridSpec& grid = {});

inline constexpr long kMaxBinaryAssignments = 1L << 16;
inline constexpr std::size_t kMaxTruthTableVars = 20;

// Exhaustive comparison. Throws E_TOO_LARGE beyond 20 variables.
bool truth_table_equiv(const LogicProp& prop, const ClauseSet& clauses);

std::string report_to_json(const EquivalenceReport& r);
// "forward: N failures, backward: M failures" plus one line per failure and
// warning.
std::string report_to_text(const EquivalenceReport& r);

}  // namespace gdpc

#endif  // GDPC_VERIFY_HPP_
