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
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gdpc/error.hpp"
#include "gdpc/fixtures.hpp"
#include "gdpc/normalize.hpp"
#include "gdpc/reformulate.hpp"
#include <nlohmann/json.hpp>

namespace gdpc {
namespace {

nlohmann::json Lines(const std::string& text) {
  nlohmann::json out = nlohmann::json::array();
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

nlohmann::json Describe(const GdpModel& g) {
  nlohmann::json out = nlohmann::json::array();
  for (const Disjunction& d : g.disjunctions) {
    nlohmann::json terms = nlohmann::json::array();
    for (const DisjunctTerm& t : d.terms) {
      nlohmann::json rows = nlohmann::json::array();
      for (const Constraint& c : t.constraints) rows.push_back(c.label + ": " + to_string(c));
      terms.push_back({{"boolean", t.bool_var}, {"constraints", rows}});
    }
    out.push_back({{"id", d.id}, {"disaggregate", g.disagg_sets.at(d.id)}, {"terms", terms}});
  }
  return out;
}

TEST(Fixtures, ShippedSetAndWorkedExamples) {
  EXPECT_EQ(fixture_names(),
            (std::vector<std::string>{"clip", "epc", "implicit_else", "multi_and", "multi_andor",
                                      "nested", "nested_pt", "section4", "sequential",
                                      "simple"}));
  EXPECT_EQ(worked_example_names().size(), 7u);
  for (const std::string& name : worked_example_names()) {
    EXPECT_FALSE(load_fixture(name).expected_json.empty()) << name;
  }
  EXPECT_THROW(load_fixture("missing"), Error);
  EXPECT_THROW(fixture_file("missing.txt"), Error);
}

TEST(Fixtures, EmbeddedCopiesMatchTheSourceTree) {
  for (const std::string& name : fixture_names()) {
    std::ifstream in(std::string(GDPC_FIXTURE_DIR) + "/" + name + ".gdp");
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(load_fixture(name).source, ss.str()) << name;
  }
}

TEST(Fixtures, PipelineMatchesGoldens) {
  for (const std::string& name : fixture_names()) {
    const Fixture f = load_fixture(name);
    ASSERT_FALSE(f.expected_json.empty()) << name;
    const nlohmann::json want = nlohmann::json::parse(f.expected_json);
    const Compilation c = compile_source(f.source);
    EXPECT_EQ(Lines(pretty_print(c.flattened)), want["normalized"]) << name;
    EXPECT_EQ(Describe(c.gdp()), want["disjunctions"]) << name;
    nlohmann::json logic = nlohmann::json::array();
    for (const LogicProp& p : c.gdp().props) logic.push_back(p.to_string());
    EXPECT_EQ(logic, want["logic"]) << name;
    for (Method m : {Method::kTrueFalse, Method::kHullEps, Method::kBigM}) {
      const std::string key(to_string(m));
      if (!want["stats"].contains(key)) continue;
      const ReformStats s = reformulate(c.gdp(), m).stats;
      EXPECT_EQ(s.q, want["stats"][key]["q"]) << name << " " << key;
      EXPECT_EQ(s.added_vars, want["stats"][key]["added_vars"]) << name << " " << key;
      EXPECT_EQ(s.added_constraints, want["stats"][key]["added_constraints"]) << name << " " << key;
    }
  }
}

TEST(Fixtures, WorkedExampleGridsHaveAtLeastOneHundredPoints) {
  for (const std::string& name : worked_example_names()) {
    const Fixture f = load_fixture(name);
    const Compilation c = compile_source(f.source);
    std::vector<Variable> inputs;
    for (const std::string& v : c.original.input_variables()) {
      const Variable* d = c.original.find_decl(v);
      inputs.push_back(Variable::Continuous(v, d->lb, d->ub));
    }
    EXPECT_GE(make_grid(inputs, f.grid).size(), 100u) << name;
  }
}

TEST(Section4, SevenDisjunctionsAndThreeLinkingClauses) {
  const GdpModel g = compile_source(section4_fixture().source).gdp();
  EXPECT_EQ(g.disjunctions.size(), 7u);
  std::size_t clauses = 0;
  for (const LogicProp& p : g.props) clauses += to_cnf(p).clauses.size();
  EXPECT_EQ(clauses, 3u);
  // The or-condition is one Z-disjunction: each disjunct and the joint
  // complement.
  const Disjunction& z = g.disjunctions[0];
  ASSERT_EQ(z.terms.size(), 3u);
  EXPECT_EQ(to_string(z.terms[0].constraints[0]), "FT >= 5");
  EXPECT_EQ(to_string(z.terms[1].constraints[0]), "Mc <= -1");
}

TEST(Section4, CorrectionDisjunctionConditions) {
  const GdpModel g = compile_source(section4_fixture().source).gdp();
  const Disjunction* pcorr = nullptr;
  for (const Disjunction& d : g.disjunctions) {
    const auto& set = g.disagg_sets.at(d.id);
    if (d.terms.size() == 3 && std::find(set.begin(), set.end(), "Pcorr") != set.end()) {
      pcorr = &d;
    }
  }
  ASSERT_NE(pcorr, nullptr);
  auto conditions = [](const DisjunctTerm& t) {
    std::vector<std::string> out;
    for (const Constraint& c : t.constraints) {
      if (c.relation != Relation::kEq) out.push_back(to_string(c));
    }
    return out;
  };
  EXPECT_EQ(conditions(pcorr->terms[0]), std::vector<std::string>{"ebs <= 0.6*ec"});
  EXPECT_EQ(conditions(pcorr->terms[1]), (std::vector<std::string>{"ebs <= ec", "ebs >= 0.6*ec"}));
  EXPECT_EQ(conditions(pcorr->terms[2]), std::vector<std::string>{"ebs >= ec"});
}

TEST(Pathology, Shape) {
  const GdpModel g = pathology_gdp();
  ASSERT_EQ(g.disjunctions.size(), 1u);
  ASSERT_EQ(g.disjunctions[0].terms.size(), 3u);
  const Constraint& h = g.disjunctions[0].terms[1].constraints[0];
  EXPECT_EQ(h.label, "k1_t2_c1");
  EXPECT_DOUBLE_EQ(eval_expr(h.body, {{"x", 0.0}}), 8.0);
  EXPECT_NO_THROW(g.check());
}

TEST(RandomGdp, HonoursItsContract) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RandomDims dims{1 + static_cast<int>(seed % 5), 1 + static_cast<int>(seed % 4),
                          1 + static_cast<int>((seed / 4) % 4)};
    const GdpModel g = generate_random_gdp(seed, dims);
    EXPECT_NO_THROW(g.check()) << seed;
    ASSERT_EQ(static_cast<int>(g.disjunctions.size()), dims.q) << seed;
    EXPECT_EQ(static_cast<int>(g.disjunctions[0].terms.size()), dims.max_m) << seed;
    EXPECT_EQ(static_cast<int>(g.disagg_sets.at(g.disjunctions[0].id).size()), dims.max_n) << seed;
    for (const Disjunction& d : g.disjunctions) {
      EXPECT_GE(d.terms.size(), 1u);
      EXPECT_LE(static_cast<int>(d.terms.size()), dims.max_m);
      const auto n = g.disagg_sets.at(d.id).size();
      EXPECT_GE(n, 1u);
      EXPECT_LE(static_cast<int>(n), dims.max_n);
    }
    for (const Variable& v : g.variables) {
      EXPECT_TRUE(std::isfinite(v.lb) && std::isfinite(v.ub)) << v.name;
      EXPECT_LT(v.lb, 0.0);
      EXPECT_GT(v.ub, 0.0);
    }
  }
}

TEST(RandomGdp, IsDeterministicPerSeed) {
  const RandomDims dims{3, 3, 2};
  const auto render = [](const GdpModel& g) { return Describe(g).dump(); };
  EXPECT_EQ(render(generate_random_gdp(7, dims)), render(generate_random_gdp(7, dims)));
  EXPECT_NE(render(generate_random_gdp(7, dims)), render(generate_random_gdp(8, dims)));
}

TEST(RandomGdp, RejectsOutOfRangeDimensions) {
  EXPECT_THROW(generate_random_gdp(1, {0, 2, 2}), Error);
  EXPECT_THROW(generate_random_gdp(1, {6, 2, 2}), Error);
  EXPECT_THROW(generate_random_gdp(1, {1, 5, 2}), Error);
  EXPECT_THROW(generate_random_gdp(1, {1, 2, 0}), Error);
}

}  // namespace
}  // namespace gdpc
