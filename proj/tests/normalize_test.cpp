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

#include <gtest/gtest.h>

#include "gdpc/error.hpp"
#include "gdpc/fixtures.hpp"
#include "gdpc/normalize.hpp"

namespace gdpc {
namespace {

// Statements only: declarations are compared separately.
std::string Body(const IfElseProgram& p) {
  IfElseProgram q = p;
  q.decls.clear();
  q.params.clear();
  return pretty_print(q);
}

std::string Body(std::string_view src) { return Body(parse_program(src)); }

ErrorCode CompileError(std::string_view src) {
  try {
    compile_source(src);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "compiled without error";
  return ErrorCode::kInvalidModel;
}

std::vector<std::string> ConstraintStrings(const DisjunctTerm& t) {
  std::vector<std::string> out;
  for (const Constraint& c : t.constraints) out.push_back(to_string(c));
  return out;
}

TEST(ImplicitElse, CopiesThePriorDefinition) {
  const IfElseProgram p = parse_program(load_fixture("implicit_else").source);
  const IfElseProgram q = insert_implicit_else(p);
  const IfBlock& b = q.statements[1].block;
  ASSERT_TRUE(b.has_else);
  ASSERT_EQ(b.else_body.size(), 1u);
  EXPECT_EQ(b.else_body[0].target, "p");
  EXPECT_EQ(b.else_body[0].rhs, Expr::Var("p"));
}

TEST(ImplicitElse, FillsMissingOutputsPerBranch) {
  const IfElseProgram q = insert_implicit_else(parse_program(R"(
    var x in [0, 1]; var a in [0, 9]; var b in [0, 9];
    a = 1; b = 2;
    if x <= 0.5 then a = 3; else b = 4; end
  )"));
  EXPECT_EQ(Body(q), Body(R"(
    var x in [0, 1]; var a in [0, 9]; var b in [0, 9];
    a = 1; b = 2;
    if x <= 0.5 then a = 3; b = b; else b = 4; a = a; end
  )"));
}

TEST(ImplicitElse, BranchLocalNeedsNoPriorDefinition) {
  const IfElseProgram q = insert_implicit_else(parse_program(R"(
    var x in [0, 1]; var t in [0, 9]; var y in [0, 9];
    if x <= 0.5 then t = 2*x; y = t; else y = 0; end
  )"));
  const IfBlock& b = q.statements[0].block;
  EXPECT_EQ(b.else_body.size(), 1u);  // no copy of t
}

TEST(ImplicitElse, MissingPriorDefinitionIsAnError) {
  EXPECT_EQ(CompileError(R"(
    var x in [0, 1]; var y in [0, 9]; var z in [0, 9];
    if x <= 0.5 then y = 1; end
    z = y;
  )"),
            ErrorCode::kNoPriorDef);
}

TEST(Sequentialize, ChainsReassignmentsThroughDummies) {
  const Compilation c = compile_source(load_fixture("sequential").source);
  EXPECT_EQ(Body(c.sequential),
            "r = x;\n"
            "if r <= alpha then\n  p__d1 = x^2;\nelse\n  p__d1 = 12*x - 25;\nend\n"
            "if p__d1 >= beta then\n  p__d2 = beta;\nelse\n  p__d2 = p__d1;\nend\n"
            "if p__d2 <= gamma then\n  p = gamma;\nelse\n  p = p__d2;\nend\n");
  // Names and structure.
  const IfElseProgram& s = c.sequential;
  ASSERT_NE(s.find_decl("p__d1"), nullptr);
  ASSERT_NE(s.find_decl("p__d2"), nullptr);
  EXPECT_EQ(s.find_decl("p__d1")->origin, VarOrigin::kDummy);
  EXPECT_DOUBLE_EQ(s.find_decl("p__d1")->lb, -50.0);  // bounds of the original
  EXPECT_EQ(s.statements[1].block.branches[0].body[0].target, "p__d1");
  EXPECT_EQ(s.statements[2].block.branches[0].condition.cmp.lhs, Expr::Var("p__d1"));
  EXPECT_EQ(s.statements[2].block.else_body[0].rhs, Expr::Var("p__d1"));
  EXPECT_EQ(s.statements[3].block.branches[0].body[0].target, "p");
  EXPECT_EQ(s.statements[3].block.else_body[0].rhs, Expr::Var("p__d2"));
}

TEST(Sequentialize, ImplicitElseExampleUsesOneDummy) {
  const Compilation c = compile_source(load_fixture("implicit_else").source);
  EXPECT_EQ(Body(c.sequential),
            "p__d1 = x^2 - 2*x;\n"
            "if p__d1 <= alpha then\n"
            "  p = p__d1 + 3*x;\n"
            "else\n"
            "  p = p__d1;\n"
            "end\n");
}

TEST(Flatten, NestedBlockWritesDummyAndOuterCopiesIt) {
  const Compilation c = compile_source(load_fixture("nested").source);
  EXPECT_EQ(Body(c.flattened),
            "p1 = 2*x + 1;\n"
            "p2 = x^2 + 1;\n"
            "if p1 >= kappa*p2 then\n"
            "  T__d1 = 3*x + 1;\n"
            "else\n"
            "  T__d1 = x^2;\n"
            "end\n"
            "if p1 <= alpha then\n"
            "  T = T__d1;\n"
            "else\n"
            "  T = 10 - x;\n"
            "end\n");
}

TEST(Flatten, WarnsWhenHoistedExpressionLeavesBounds) {
  const Compilation c = compile_source(R"(
    var x in [0, 4]; var t in [0, 5]; var y in [0, 20];
    if x <= 1 then
      t = 5*x;
      if t <= 2 then y = t; else y = 1; end
    else
      y = 0;
    end
  )");
  bool warned = false;
  for (const Diagnostic& d : c.diagnostics) warned |= d.code == "D_HOIST_BOUNDS";
  EXPECT_TRUE(warned);
}

TEST(Split, AndConditionGetsTwoConditionDisjunctions) {
  const Compilation c = compile_source(load_fixture("multi_and").source);
  ASSERT_EQ(c.split.blocks.size(), 1u);
  const SplitBlock& b = c.split.blocks[0];
  ASSERT_EQ(b.condition_disjunctions.size(), 2u);
  EXPECT_EQ(b.condition_disjunctions[0].terms[0].bool_var, "Z_1_1");
  EXPECT_EQ(b.condition_disjunctions[0].terms[1].bool_var, "Zn_1_1");
  ASSERT_EQ(b.links.size(), 2u);
  EXPECT_EQ(b.links[0].to_string(), "((Z_1_1 and Z_1_2) => Y_1_1)");
  EXPECT_EQ(b.links[1].to_string(), "(not (Z_1_1 and Z_1_2) => Y_1_2)");
}

TEST(Split, PureOrConditionGetsOneWiderDisjunction) {
  const Compilation c = compile_source(load_fixture("nested_pt").source);
  ASSERT_EQ(c.split.blocks.size(), 1u);
  const SplitBlock& b = c.split.blocks[0];
  ASSERT_EQ(b.condition_disjunctions.size(), 1u);
  const Disjunction& d = b.condition_disjunctions[0];
  ASSERT_EQ(d.terms.size(), 3u);
  EXPECT_EQ(d.terms[2].constraints.size(), 2u);  // both complements
}

TEST(BuildDisjunctions, EnergyPowerCostStructure) {
  const Compilation c = compile_source(load_fixture("epc").source);
  const GdpModel& g = c.gdp();
  ASSERT_EQ(g.disjunctions.size(), 1u);
  const Disjunction& d = g.disjunctions[0];
  ASSERT_EQ(d.terms.size(), 3u);
  EXPECT_EQ(ConstraintStrings(d.terms[0]),
            (std::vector<std::string>{"E >= 10", "PC = 100 + 1*x^2 + 2*x + E - 10"}));
  EXPECT_EQ(ConstraintStrings(d.terms[1]),
            (std::vector<std::string>{"E <= 4", "PC = 100 - 3*(4 - E)"}));
  // Else term: beta <= E <= alpha as the closed complements of both tests.
  EXPECT_EQ(ConstraintStrings(d.terms[2]),
            (std::vector<std::string>{"E <= 10", "E >= 4", "PC = 100"}));
  EXPECT_EQ(g.disagg_sets.at("k1"), (std::vector<std::string>{"E", "PC"}));
  ASSERT_EQ(g.global_constraints.size(), 1u);
  EXPECT_EQ(to_string(g.global_constraints[0]), "E = 2*x + 10");
  EXPECT_EQ(d.terms[0].bool_var, "Y_1_1");
}

TEST(BuildDisjunctions, SequentialChainDisaggregation) {
  const GdpModel g = compile_source(load_fixture("sequential").source).gdp();
  ASSERT_EQ(g.disjunctions.size(), 3u);
  EXPECT_EQ(g.disagg_sets.at("k1"), (std::vector<std::string>{"r", "p__d1"}));
  EXPECT_EQ(g.disagg_sets.at("k2"), (std::vector<std::string>{"p__d1", "p__d2"}));
  EXPECT_EQ(g.disagg_sets.at("k3"), (std::vector<std::string>{"p__d2", "p"}));
}

TEST(BuildDisjunctions, ImpliedNegationsArePruned) {
  // x >= 3 implies x >= 1, so the second branch needs only x <= 3.
  const GdpModel g = compile_source(R"(
    var x in [0, 5]; var y in [0, 9];
    if x >= 3 then y = 1; else if x >= 1 then y = 2; else y = 3; end
  )").gdp();
  const Disjunction& d = g.disjunctions[0];
  EXPECT_EQ(ConstraintStrings(d.terms[1]), (std::vector<std::string>{"x >= 1", "x <= 3", "y = 2"}));
  EXPECT_EQ(ConstraintStrings(d.terms[2]), (std::vector<std::string>{"x <= 1", "y = 3"}));
}

TEST(BuildDisjunctions, ExplicitDisaggregateAddsVariables) {
  const GdpModel g = compile_source(R"(
    var x in [0, 5]; var y in [0, 9];
    disaggregate x in block;
    if y <= 3 then y = x; else y = 2*x; end
  )").gdp();
  const auto& set = g.disagg_sets.at("k1");
  EXPECT_NE(std::find(set.begin(), set.end(), "x"), set.end());
}

TEST(BuildDisjunctions, UnboundedDisaggregatedVariableIsAnError) {
  EXPECT_EQ(CompileError(R"(
    var x in [0, 1]; var y in [0, inf];
    if x <= 0.5 then y = 1; else y = 0; end
  )"),
            ErrorCode::kUnboundedDisagg);
}

TEST(Pipeline, PassDumpsAreDeterministic) {
  for (const std::string& name : fixture_names()) {
    const Compilation a = compile_source(load_fixture(name).source);
    const Compilation b = compile_source(load_fixture(name).source);
    for (const std::string& pass : pass_names()) {
      EXPECT_EQ(dump_pass(a, pass), dump_pass(b, pass)) << name << " " << pass;
    }
  }
}

TEST(Pipeline, NormalizedProgramHasSingleAssignmentAndNoNesting) {
  for (const std::string& name : fixture_names()) {
    const IfElseProgram& p = compile_source(load_fixture(name).source).flattened;
    std::set<std::string> top;
    for (const Statement& s : p.statements) {
      if (!s.is_if()) {
        EXPECT_TRUE(top.insert(s.target).second) << name << ": " << s.target;
        continue;
      }
      EXPECT_TRUE(s.block.has_else) << name;
      for (const Branch& br : s.block.branches) {
        for (const Statement& t : br.body) EXPECT_FALSE(t.is_if()) << name;
      }
      std::set<std::string> outs;
      CollectAssigned(s.block.else_body, outs);
      for (const std::string& o : outs) EXPECT_TRUE(top.insert(o).second) << name << ": " << o;
    }
  }
}

TEST(Pipeline, UnknownPassName) {
  const Compilation c = compile_source(load_fixture("epc").source);
  EXPECT_THROW(dump_pass(c, "nope"), Error);
}

}  // namespace
}  // namespace gdpc
