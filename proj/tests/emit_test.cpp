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
#include "gdpc/error.hpp"
#include "gdpc/fixtures.hpp"
#include "gdpc/normalize.hpp"
#include "gdpc/reformulate.hpp"
#include <nlohmann/json.hpp>

namespace gdpc {
namespace {

MinlpModel EpcModel(Method method = Method::kTrueFalse) {
  return reformulate(compile_source(load_fixture("epc").source).gdp(), method).model;
}

ErrorCode ParseCode(std::string_view text) {
  try {
    parse_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::kSyntax;
}

TEST(Json, RoundTripsEveryFixtureAndMethod) {
  for (const std::string& name : fixture_names()) {
    const GdpModel g = compile_source(load_fixture(name).source).gdp();
    for (Method method : {Method::kTrueFalse, Method::kBigM, Method::kHullEps}) {
      const MinlpModel m = reformulate(g, method).model;
      const std::string text = emit_json(m);
      const MinlpModel back = parse_json(text);
      EXPECT_TRUE(structurally_equal(m, back)) << name;
      EXPECT_EQ(emit_json(back), text) << name;
    }
  }
}

TEST(Json, DocumentShape) {
  const std::string text = emit_json(EpcModel());
  EXPECT_NE(text.back(), '\n');
  const nlohmann::json doc = nlohmann::json::parse(text);
  EXPECT_EQ(doc["schema_version"], "1");
  EXPECT_EQ(doc["method"], "true-false");
  std::vector<std::string> names;
  for (const auto& v : doc["variables"]) names.push_back(v["name"]);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  std::vector<std::string> labels;
  for (const auto& c : doc["constraints"]) labels.push_back(c["label"]);
  EXPECT_TRUE(std::is_sorted(labels.begin(), labels.end()));
  EXPECT_EQ(labels.size(), EpcModel().constraints.size());
  EXPECT_EQ(doc["exactly_one_groups"],
            nlohmann::json::parse(R"([["lam_1_k1","lam_2_k1","lam_3_k1"]])"));
  for (const auto& v : doc["variables"]) {
    if (v["name"] == "lam_2_k1") {
      EXPECT_EQ(v["kind"], "binary");
      EXPECT_EQ(v["aux"]["source"], "Y_1_2");
      EXPECT_EQ(v["aux"]["term"], 2);
    }
  }
}

TEST(Json, InfiniteBoundsAreStrings) {
  MinlpModel m;
  m.variables.push_back(Variable::Continuous("y", -kInf, kInf));
  const nlohmann::json doc = nlohmann::json::parse(emit_json(m));
  EXPECT_EQ(doc["variables"][0]["lb"], "-inf");
  EXPECT_EQ(doc["variables"][0]["ub"], "inf");
  EXPECT_EQ(parse_json(emit_json(m)).variables[0].ub, kInf);
}

TEST(Json, ExpressionEncoding) {
  const Expr e = Expr::Constant(2) * Expr::Var("x") -
                 Expr::Call(Fn::kExp, -Expr::Pow(Expr::Var("y"), Expr::Constant(2)));
  const std::string text = expr_to_json(e);
  EXPECT_EQ(text,
            R"(["-",2,["*",2,["const",2],["var","x"]],["call","exp",1,["neg",1,["^",2,["var","y"],["const",2]]]]])");
  EXPECT_EQ(expr_from_json(text), e);
  // 17 significant digits, so every double survives the round trip.
  EXPECT_EQ(expr_to_json(Expr::Constant(0.1)), R"(["const",0.10000000000000001])");
}

TEST(Json, MalformedDocumentsAreRejected) {
  EXPECT_EQ(ParseCode("not json"), ErrorCode::kInvalidModel);
  EXPECT_EQ(ParseCode("{}"), ErrorCode::kInvalidModel);
  EXPECT_EQ(ParseCode(R"({"schema_version":"2","variables":[],"constraints":[],"exactly_one_groups":[]})"),
            ErrorCode::kInvalidModel);
  EXPECT_EQ(ParseCode(R"({"schema_version":"1","variables":[{"name":"x","lb":0,"ub":1,"kind":"integer","origin":"user"}],"constraints":[],"exactly_one_groups":[]})"),
            ErrorCode::kInvalidModel);
  EXPECT_THROW(expr_from_json(R"(["+",3,["var","x"]])"), Error);
  EXPECT_THROW(expr_from_json(R"(["call","tan",1,["var","x"]])"), Error);
}

TEST(Text, MatchesGolden) {
  EXPECT_EQ(emit_algebraic(EpcModel()), fixture_file("epc.true-false.txt"));
}

TEST(Text, SectionsInOrder) {
  const std::string text = emit_algebraic(EpcModel(Method::kBigM));
  const auto vars = text.find("variables:");
  const auto disj = text.find("disjunction k1:");
  const auto globals = text.find("globals:");
  ASSERT_NE(vars, std::string::npos);
  ASSERT_NE(disj, std::string::npos);
  ASSERT_NE(globals, std::string::npos);
  EXPECT_LT(vars, disj);
  EXPECT_LT(disj, globals);
  EXPECT_NE(text.find("  k1_t3_c3_ge: PC - 100 >= -50*(1 - lam_3_k1)\n"), std::string::npos);
}

TEST(Canonical, OrderDoesNotMatterForStructuralEquality) {
  MinlpModel a = EpcModel();
  MinlpModel b = a;
  std::reverse(b.constraints.begin(), b.constraints.end());
  std::reverse(b.variables.begin(), b.variables.end());
  EXPECT_TRUE(structurally_equal(a, b));
  b.constraints.pop_back();
  EXPECT_FALSE(structurally_equal(a, b));
}

}  // namespace
}  // namespace gdpc
