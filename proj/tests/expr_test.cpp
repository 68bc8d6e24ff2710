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

#include <cmath>

#include <gtest/gtest.h>

#include "gdpc/error.hpp"
#include "gdpc/expr.hpp"
#include "gdpc/interval.hpp"
#include "gdpc/model.hpp"

namespace gdpc {
namespace {

Expr V(const char* n) { return Expr::Var(n); }
Expr C(double v) { return Expr::Constant(v); }

TEST(Expr, EvaluatesArithmetic) {
  const Expr e = C(100) + V("x") * V("x") + C(2) * V("x") + V("E") - C(10);
  EXPECT_DOUBLE_EQ(eval_expr(e, {{"x", 1.0}, {"E", 12.0}}), 100 + 1 + 2 + 12 - 10);
  EXPECT_DOUBLE_EQ(eval_expr(Expr::Pow(V("x"), C(3)), {{"x", 2.0}}), 8.0);
  EXPECT_DOUBLE_EQ(eval_expr(-V("x"), {{"x", 2.0}}), -2.0);
  EXPECT_DOUBLE_EQ(eval_expr(Expr::Call(Fn::kSqrt, V("x")), {{"x", 9.0}}), 3.0);
}

TEST(Expr, DomainErrors) {
  auto code = [](const Expr& e, const Binding& b) {
    try {
      eval_expr(e, b);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::kInvalidModel;
  };
  EXPECT_EQ(code(C(1) / V("x"), {{"x", 0.0}}), ErrorCode::kDomain);
  EXPECT_EQ(code(Expr::Call(Fn::kLog, V("x")), {{"x", -1.0}}), ErrorCode::kDomain);
  EXPECT_EQ(code(Expr::Call(Fn::kSqrt, V("x")), {{"x", -1.0}}), ErrorCode::kDomain);
}

TEST(Expr, PowRequiresConstantExponent) {
  EXPECT_THROW(Expr::Pow(V("x"), V("y")), Error);
}

TEST(Expr, StructuralEqualityAndSharing) {
  const Expr a = V("x") + C(1);
  const Expr b = V("x") + C(1);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, V("x") + C(2));
  EXPECT_NE(a, C(1) + V("x"));  // structure, not algebra
}

TEST(Expr, PrintsWithMinimalParentheses) {
  EXPECT_EQ(to_string((V("a") + V("b")) * V("c")), "(a + b)*c");
  EXPECT_EQ(to_string(V("a") + V("b") * V("c")), "a + b*c");
  EXPECT_EQ(to_string(V("a") - (V("b") - V("c"))), "a - (b - c)");
  EXPECT_EQ(to_string(Expr::Pow(V("x"), C(2))), "x^2");
  EXPECT_EQ(to_string(C(3) * (C(4) - V("E"))), "3*(4 - E)");
}

TEST(Expr, FormatNumberRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-12, 123456789.125, -2.5, 0.0}) {
    EXPECT_EQ(std::stod(FormatNumber(v)), v) << FormatNumber(v);
  }
  EXPECT_EQ(FormatNumber(2.0), "2");
  EXPECT_EQ(FormatNumber(0.5), "0.5");
}

TEST(Expr, VariablesSubstituteRename) {
  const Expr e = V("x") * V("y") + V("x");
  EXPECT_EQ(variables_of(e), (std::set<std::string>{"x", "y"}));
  EXPECT_TRUE(mentions(e, "y"));
  EXPECT_FALSE(mentions(e, "z"));
  EXPECT_EQ(rename(e, {{"x", "u"}}), V("u") * V("y") + V("u"));
  EXPECT_EQ(substitute(e, {{"y", C(2)}}), V("x") * C(2) + V("x"));
}

TEST(Expr, AffineForm) {
  const auto f = affine_form(C(3) * (C(4) - V("E")) + V("x") - C(1));
  ASSERT_TRUE(f.has_value());
  EXPECT_DOUBLE_EQ(f->constant, 11.0);
  EXPECT_DOUBLE_EQ(f->coef.at("E"), -3.0);
  EXPECT_DOUBLE_EQ(f->coef.at("x"), 1.0);
  EXPECT_FALSE(is_affine(V("x") * V("y")));
  EXPECT_TRUE(is_affine(V("x") / C(2)));
}

TEST(Interval, NaturalExtension) {
  const Box box{{"x", {-5, 5}}, {"E", {0, 20}}};
  const Interval sq = interval_bounds(Expr::Pow(V("x"), C(2)), box);
  EXPECT_DOUBLE_EQ(sq.lo, 0.0);
  EXPECT_DOUBLE_EQ(sq.hi, 25.0);
  const Interval lin = interval_bounds(C(2) * V("x") + C(10), box);
  EXPECT_DOUBLE_EQ(lin.lo, 0.0);
  EXPECT_DOUBLE_EQ(lin.hi, 20.0);
  const Interval div = interval_bounds(C(1) / V("x"), box);
  EXPECT_FALSE(div.bounded());
}

TEST(Interval, EnclosesSampledValues) {
  const Expr e = V("x") * V("x") - C(3) * V("x") * V("y") + Expr::Call(Fn::kExp, V("y"));
  const Box box{{"x", {-2, 3}}, {"y", {-1, 1}}};
  const Interval iv = interval_bounds(e, box);
  for (double x = -2; x <= 3; x += 0.25) {
    for (double y = -1; y <= 1; y += 0.125) {
      const double v = eval_expr(e, {{"x", x}, {"y", y}});
      EXPECT_LE(iv.lo, v + 1e-12);
      EXPECT_GE(iv.hi, v - 1e-12);
    }
  }
}

TEST(Constraint, SatisfactionAndComplement) {
  const Constraint c = normalize_constraint(V("E"), Relation::kGe, C(10), "c");
  EXPECT_TRUE(c.satisfied({{"E", 10.0}}));
  EXPECT_TRUE(c.satisfied({{"E", 11.0}}));
  EXPECT_FALSE(c.satisfied({{"E", 9.0}}));
  const Constraint n = negate_comparison(c);
  EXPECT_EQ(n.relation, Relation::kLe);
  EXPECT_TRUE(n.satisfied({{"E", 10.0}}));  // closed complement keeps the boundary
  EXPECT_DOUBLE_EQ(c.violation({{"E", 7.0}}), 3.0);
  const Constraint eq = normalize_constraint(V("E"), Relation::kEq, C(1));
  EXPECT_THROW(negate_comparison(eq), Error);
  EXPECT_EQ(to_string(c), "E >= 10");
}

}  // namespace
}  // namespace gdpc
