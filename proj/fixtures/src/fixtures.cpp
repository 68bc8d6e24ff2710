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

#include "gdpc/fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "embedded.hpp"
#include "gdpc/error.hpp"
#include <nlohmann/json.hpp>

namespace gdpc {
namespace {

constexpr std::string_view kSourceSuffix = ".gdp";
constexpr std::string_view kExpectedSuffix = ".expected.json";

const std::string* FindFile(std::string_view name) {
  const auto& files = fixtures_data::files();
  const auto it = files.find(name);
  return it == files.end() ? nullptr : &it->second;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& [file, content] : fixtures_data::files()) {
      if (file.size() > kSourceSuffix.size() && file.ends_with(kSourceSuffix)) {
        names.push_back(file.substr(0, file.size() - kSourceSuffix.size()));
      }
    }
    return names;
  }();
  return kNames;
}

const std::vector<std::string>& worked_example_names() {
  static const std::vector<std::string> kNames = {
      "epc", "implicit_else", "sequential", "multi_and", "multi_andor", "nested", "section4"};
  return kNames;
}

const std::string& fixture_file(std::string_view file_name) {
  const std::string* content = FindFile(file_name);
  if (content == nullptr) {
    throw Error(ErrorCode::kInvalidModel, fmt::format("no fixture file '{}'", file_name));
  }
  return *content;
}

Fixture load_fixture(std::string_view name) {
  const std::string* source = FindFile(fmt::format("{}{}", name, kSourceSuffix));
  if (source == nullptr) {
    throw Error(ErrorCode::kInvalidModel, fmt::format("unknown fixture '{}'", name));
  }
  Fixture f;
  f.name = std::string(name);
  f.source = *source;
  if (const std::string* expected = FindFile(fmt::format("{}{}", name, kExpectedSuffix))) {
    f.expected_json = *expected;
    const nlohmann::json doc = nlohmann::json::parse(*expected);
    if (doc.contains("grid")) f.grid.points_per_dim = doc["grid"].value("points_per_dim", 10);
    f.expects_bound_clips = doc.value("bound_clip_warnings", false);
  }
  return f;
}

Fixture section4_fixture() { return load_fixture("section4"); }

GdpModel pathology_gdp() {
  const Expr x = Expr::Var("x");
  GdpModel g;
  g.variables.push_back(Variable::Continuous("x", 0.0, 6.0));
  Disjunction d;
  d.id = "k1";
  auto term = [&](int j, Expr h) {
    DisjunctTerm t;
    t.bool_var = fmt::format("Y_1_{}", j);
    t.constraints.push_back(
        normalize_constraint(h, Relation::kLe, Expr::Constant(0.0), fmt::format("k1_t{}_c1", j)));
    d.terms.push_back(std::move(t));
  };
  term(1, x - Expr::Constant(2.0));
  term(2, Expr::Pow(x - Expr::Constant(3.0), Expr::Constant(2.0)) - Expr::Constant(1.0));
  term(3, Expr::Constant(4.0) - x);
  g.disjunctions.push_back(std::move(d));
  g.disagg_sets["k1"] = {"x"};
  g.check();
  return g;
}

GdpModel generate_random_gdp(std::uint64_t seed, RandomDims dims) {
  if (dims.q < 1 || dims.q > 5 || dims.max_m < 1 || dims.max_m > 4 || dims.max_n < 1 ||
      dims.max_n > 4) {
    throw Error(ErrorCode::kInvalidModel,
                fmt::format("random model dimensions ({}, {}, {}) out of range", dims.q,
                            dims.max_m, dims.max_n));
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  GdpModel g;
  const int nvars = dims.max_n + 2;
  for (int i = 1; i <= nvars; ++i) {
    const double lb = -uniform(1, 10);
    const double ub = uniform(1, 10);
    g.variables.push_back(Variable::Continuous(fmt::format("x{}", i), lb, ub));
  }
  auto coefficient = [&] {
    const int a = uniform(1, 3);
    return static_cast<double>(uniform(0, 1) == 0 ? -a : a);
  };

  for (int k = 1; k <= dims.q; ++k) {
    const int m = k == 1 ? dims.max_m : uniform(std::min(2, dims.max_m), dims.max_m);
    const int n = k == 1 ? dims.max_n : uniform(1, dims.max_n);
    std::vector<int> order(nvars);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(n);
    std::sort(order.begin(), order.end());
    std::vector<std::string> disagg;
    for (int i : order) disagg.push_back(g.variables[i].name);

    Disjunction d;
    d.id = fmt::format("k{}", k);
    for (int j = 1; j <= m; ++j) {
      DisjunctTerm t;
      t.bool_var = fmt::format("Y_{}_{}", k, j);
      const int rows = uniform(1, 2);
      for (int c = 1; c <= rows; ++c) {
        const std::string label = fmt::format("{}_t{}_c{}", d.id, j, c);
        Expr body = Expr::Constant(static_cast<double>(uniform(-5, 5)));
        Relation rel = Relation::kLe;
        if (c == 1) {
          // Linear over every disaggregated variable; sometimes an equality.
          for (const std::string& v : disagg) body = body + Expr::Constant(coefficient()) * Expr::Var(v);
          if (uniform(0, 3) == 0) rel = Relation::kEq;
        } else {
          const std::string& a = disagg[uniform(0, n - 1)];
          const std::string& b = disagg[uniform(0, n - 1)];
          body = Expr::Pow(Expr::Var(a), Expr::Constant(2.0)) +
                 Expr::Constant(coefficient()) * Expr::Var(b) - body;
        }
        t.constraints.push_back(normalize_constraint(body, rel, Expr::Constant(0.0), label));
      }
      d.terms.push_back(std::move(t));
    }
    g.disagg_sets[d.id] = std::move(disagg);
    g.disjunctions.push_back(std::move(d));
  }
  g.check();
  return g;
}

}  // namespace gdpc
