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

#include <gtest/gtest.h>

#include "gdpc/emit.hpp"
#include "gdpc/fixtures.hpp"
#include "gdpc/normalize.hpp"
#include "gdpc/reformulate.hpp"
#include "gdpc/verify.hpp"
#include "support.hpp"

namespace gdpc {
namespace {

using testing::CountFormulas;
using testing::StructuralCopyViolations;

RandomDims DimsFor(std::uint64_t seed) {
  return RandomDims{1 + static_cast<int>(seed % 5), 1 + static_cast<int>((seed / 5) % 4),
                    1 + static_cast<int>((seed / 20) % 4)};
}

TEST(Property, CountFormulasOnTwoHundredRandomModels) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GdpModel g = generate_random_gdp(seed, DimsFor(seed));
    const testing::ExpectedCounts want = CountFormulas(g);
    const Reformulation tf = reformulate_true_false(g);
    EXPECT_EQ(tf.stats.added_vars, want.tf_vars) << seed;
    EXPECT_EQ(tf.stats.added_constraints, want.tf_constraints) << seed;
    const Reformulation hull = reformulate_hull_eps(g);
    EXPECT_EQ(hull.stats.added_vars, want.hull_vars) << seed;
    EXPECT_EQ(hull.stats.added_constraints, want.hull_constraints) << seed;
    // The recount from provenance agrees.
    EXPECT_EQ(stats(tf.model, g), tf.stats) << seed;
    EXPECT_EQ(stats(hull.model, g), hull.stats) << seed;
  }
}

TEST(Property, AddedVariablesAreExactlyTheAuxiliaries) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GdpModel g = generate_random_gdp(seed, DimsFor(seed));
    const MinlpModel m = reformulate_true_false(g).model;
    long aux = 0;
    for (const Variable& v : m.variables) {
      if (v.origin == VarOrigin::kHatCopy || v.origin == VarOrigin::kDisaggregatedTrue ||
          v.origin == VarOrigin::kDisaggregatedFalse) {
        ++aux;
        ASSERT_TRUE(v.aux.has_value()) << v.name;
        EXPECT_NE(g.find_variable(v.aux->source), nullptr) << v.name;
      }
    }
    EXPECT_EQ(aux, CountFormulas(g).tf_vars) << seed;
  }
}

TEST(Property, StructuralCopiesOnRandomModelsAndFixtures) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GdpModel g = generate_random_gdp(seed, DimsFor(seed));
    EXPECT_TRUE(StructuralCopyViolations(g, reformulate_true_false(g).model).empty()) << seed;
  }
  for (const std::string& name : fixture_names()) {
    const GdpModel g = compile_source(load_fixture(name).source).gdp();
    EXPECT_TRUE(StructuralCopyViolations(g, reformulate_true_false(g).model).empty()) << name;
  }
}

TEST(Property, StructuralCopyCheckCatchesAlteredRows) {
  const GdpModel g = compile_source(load_fixture("epc").source).gdp();
  MinlpModel m = reformulate_true_false(g).model;
  for (Constraint& c : m.constraints) {
    if (c.label == "k1_t1_c2") c.body = c.body * Expr::Constant(2);
  }
  EXPECT_EQ(StructuralCopyViolations(g, m), std::vector<std::string>{"k1_t1_c2"});
}

TEST(Property, JsonRoundTripOnRandomModels) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GdpModel g = generate_random_gdp(seed, DimsFor(seed));
    for (Method method : {Method::kTrueFalse, Method::kBigM, Method::kHullEps}) {
      const MinlpModel m = reformulate(g, method).model;
      const std::string text = emit_json(m);
      EXPECT_TRUE(structurally_equal(parse_json(text), m)) << seed;
      EXPECT_EQ(emit_json(parse_json(text)), text) << seed;
    }
  }
}

TEST(Property, ReformulationIsDeterministic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RandomDims dims = DimsFor(seed);
    const std::string a = emit_json(reformulate_true_false(generate_random_gdp(seed, dims)).model);
    const std::string b = emit_json(reformulate_true_false(generate_random_gdp(seed, dims)).model);
    EXPECT_EQ(a, b) << seed;
  }
}

TEST(Property, LogicClausesMatchPropositionsOnFixtures) {
  for (const std::string& name : fixture_names()) {
    const GdpModel g = compile_source(load_fixture(name).source).gdp();
    for (const LogicProp& p : g.props) {
      const ClauseSet cs = to_cnf(p);
      EXPECT_TRUE(truth_table_equiv(p, cs)) << name;
      for (const Clause& c : cs.clauses) {
        EXPECT_TRUE(std::is_sorted(c.begin(), c.end())) << name;
        EXPECT_EQ(std::adjacent_find(c.begin(), c.end()), c.end()) << name;
      }
    }
  }
}

}  // namespace
}  // namespace gdpc
