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

#ifndef GDPC_NORMALIZE_HPP_
#define GDPC_NORMALIZE_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gdpc/model.hpp"
#include "gdpc/program.hpp"

namespace gdpc {

// --- program passes ---------------------------------------------------------
//
// Fixed order: validate -> insert_implicit_else -> sequentialize ->
// flatten_nested -> split_conditions -> build_disjunctions. Every pass is a
// pure function; new dummy variables are appended to `decls` with origin
// `dummy` and named `<var>__d<n>` with a per-variable counter.

// Gives every if-block an explicit else and makes every branch assign every
// variable the block writes (missing ones get `v = v`). A variable written in
// a single branch, without a prior definition and never read afterwards, is
// treated as branch-local and needs no copy. Throws E_NO_PRIOR_DEF when a
// copy is needed but the variable has no prior definition.
IfElseProgram insert_implicit_else(const IfElseProgram& p);

// Single-assignment renaming. The last definition of a variable keeps its
// name; earlier definitions write fresh dummies and later reads follow the
// chain. Branches of a block write the block's output name.
IfElseProgram sequentialize(const IfElseProgram& p);

// Hoists nested blocks and branch-local statements in front of the enclosing
// block. An inner block writing an output of the outer block writes a fresh
// dummy instead, and the outer branch copies it. Emits D_HOIST_BOUNDS when a
// hoisted (now always evaluated) expression can leave its target's bounds;
// dummy bounds are widened to the expression's range when that is finite.
IfElseProgram flatten_nested(const IfElseProgram& p);

// Condition splitting for blocks with compound conditions.
struct SplitBlock {
  int block = 0;  // 1-based index among the flattened program's if-blocks
  // Comparisons owning a Boolean Z_<block>_<i>; the Z-disjunctions built
  // from them.
  std::vector<Disjunction> condition_disjunctions;
  // Links between condition Booleans and the block Booleans Y_<block>_<j>.
  std::vector<LogicProp> links;
};

struct SplitResult {
  // Compound branch conditions replaced by formulas over Z flags.
  IfElseProgram program;
  std::vector<SplitBlock> blocks;  // only blocks that were split

  const SplitBlock* find(int block) const;
};

SplitResult split_conditions(const IfElseProgram& p);

// Where each if-block of the normalized program went in the GDP.
struct BlockLowering {
  int block = 0;
  std::string disjunction;                  // block disjunction id
  std::vector<std::string> branch_booleans;  // Y per branch, else last
  std::vector<std::string> condition_disjunctions;
  bool split = false;
};

struct Lowering {
  GdpModel gdp;
  std::vector<BlockLowering> blocks;
};

// One disjunction per block; assignments outside blocks become global
// constraints. Parameters are substituted by their values. Throws
// E_UNBOUNDED_DISAGG when a disaggregated variable lacks finite bounds.
Lowering build_disjunctions(const SplitResult& split);

// --- propositional logic ----------------------------------------------------

struct Literal {
  std::string var;
  bool positive = true;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Literals sorted by (var, polarity) and unique.
using Clause = std::vector<Literal>;

struct ClauseSet {
  std::vector<Clause> clauses;

  bool eval(const std::map<std::string, bool, std::less<>>& values) const;
  std::set<std::string> variables() const;
};

inline constexpr std::size_t kMaxClauses = 4096;

// Negation normal form followed by distribution; tautological and duplicate
// clauses are removed. Throws E_TOO_LARGE beyond kMaxClauses clauses.
ClauseSet to_cnf(const LogicProp& prop);

// Each clause with positive set P and negative set N becomes
//   sum(P) >= sum(N) - (|N| - 1)
// over the binaries named by `binary_of` (identity when absent). Rows are
// labelled clause_<first_index>, clause_<first_index + 1>, ...
std::vector<Constraint> clauses_to_linear(const ClauseSet& cs,
                                          const std::map<std::string, std::string>& binary_of = {},
                                          int first_index = 1);

// --- pipeline ---------------------------------------------------------------

struct Compilation {
  IfElseProgram original;
  std::vector<Diagnostic> diagnostics;  // validation + pass diagnostics
  IfElseProgram implicit_else;
  IfElseProgram sequential;
  IfElseProgram flattened;  // the normalized program
  SplitResult split;
  Lowering lowering;

  const GdpModel& gdp() const { return lowering.gdp; }
};

Compilation compile(const IfElseProgram& p);
Compilation compile_source(std::string_view source);

// Names accepted by `--dump-pass`.
const std::vector<std::string>& pass_names();
// Program text of a pass ("parse", "implicit-else", "sequentialize",
// "flatten", "split"); "gdp" renders the disjunctive model.
std::string dump_pass(const Compilation& c, std::string_view pass);

std::string to_string(const GdpModel& m);

}  // namespace gdpc

#endif  // GDPC_NORMALIZE_HPP_
