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

#ifndef GDPC_FIXTURES_HPP_
#define GDPC_FIXTURES_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gdpc/model.hpp"
#include "gdpc/verify.hpp"

namespace gdpc {

// A worked example shipped as `<name>.gdp` plus `<name>.expected.json`.
// The expected document records the normalized program, the GDP structure,
// the statistics of every method and the verification grid.
struct Fixture {
  std::string name;
  std::string source;         // .gdp text
  std::string expected_json;  // empty when the fixture has no golden
  GridSpec grid;
  bool expects_bound_clips = false;
};

// Every shipped program fixture, sorted by name.
const std::vector<std::string>& fixture_names();

// The seven worked examples: the energy/power-cost model, the implicit-else
// and sequential examples, the two multi-condition examples, the nested
// example, and the product-design chain.
const std::vector<std::string>& worked_example_names();

// Throws E_INVALID_MODEL for an unknown name.
Fixture load_fixture(std::string_view name);

// The product-design chain with placeholder polynomial property models.
Fixture section4_fixture();

// Contents of another shipped file, e.g. "epc.true-false.txt". Throws
// E_INVALID_MODEL when absent.
const std::string& fixture_file(std::string_view file_name);

// One three-term disjunction over x in [0, 6]:
//   [x - 2 <= 0]  or  [(x - 3)^2 - 1 <= 0]  or  [4 - x <= 0]
// The middle term is nonlinear with h(0) = 8 > 0, the case where the
// Lee-Grossmann epsilon perspective cannot vanish at lambda = 0.
GdpModel pathology_gdp();

struct RandomDims {
  int q = 1;      // disjunctions
  int max_m = 2;  // terms per disjunction
  int max_n = 2;  // disaggregated variables per disjunction
};

// Deterministic pseudo-random GDP with bounded variables, linear and
// quadratic term constraints and exactly-one disjunctions. Exactly `q`
// disjunctions; the first has max_m terms and max_n disaggregated variables,
// the others draw their sizes uniformly. Requires 1 <= q <= 5,
// 1 <= max_m <= 4, 1 <= max_n <= 4 (E_INVALID_MODEL otherwise).
GdpModel generate_random_gdp(std::uint64_t seed, RandomDims dims);

}  // namespace gdpc

#endif  // GDPC_FIXTURES_HPP_
