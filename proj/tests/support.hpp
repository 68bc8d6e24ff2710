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

#ifndef GDPC_TESTS_SUPPORT_HPP_
#define GDPC_TESTS_SUPPORT_HPP_

#include <map>
#include <string>
#include <vector>

#include "gdpc/model.hpp"
#include "gdpc/reformulate.hpp"

namespace gdpc::testing {

// Closed-form growth computed from the GDP alone.
struct ExpectedCounts {
  long tf_vars = 0;
  long tf_constraints = 0;
  long hull_vars = 0;
  long hull_constraints = 0;
};

inline ExpectedCounts CountFormulas(const GdpModel& g) {
  ExpectedCounts e;
  for (const Disjunction& d : g.disjunctions) {
    const long n = static_cast<long>(g.disagg_sets.at(d.id).size());
    const long m = static_cast<long>(d.terms.size());
    e.tf_vars += 3 * n * m;
    e.tf_constraints += n + 3 * n * m;
    e.hull_vars += n * m;
    e.hull_constraints += n + n * m;
  }
  return e;
}

// Labels of nonlinear true-false rows that are neither a global constraint
// copied unchanged nor the source disjunct constraint with its disaggregated
// variables renamed to their hat copies.
inline std::vector<std::string> StructuralCopyViolations(const GdpModel& g, const MinlpModel& m) {
  std::map<std::string, std::map<std::string, std::string>> renames;  // source row -> map
  std::map<std::string, const Constraint*> sources;
  for (const Disjunction& d : g.disjunctions) {
    for (std::size_t t = 0; t < d.terms.size(); ++t) {
      std::map<std::string, std::string> names;
      for (const std::string& v : g.disagg_sets.at(d.id)) {
        names[v] = HatName(v, d.id, static_cast<int>(t) + 1);
      }
      for (const Constraint& c : d.terms[t].constraints) {
        renames[c.label] = names;
        sources[c.label] = &c;
      }
    }
  }
  std::map<std::string, const Constraint*> globals;
  for (const Constraint& c : g.global_constraints) globals[c.label] = &c;
  std::vector<std::string> bad;
  for (const Constraint& row : m.constraints) {
    if (is_affine(row.body)) continue;
    const auto p = m.provenance.find(row.label);
    if (p != m.provenance.end() && p->second.role == RowRole::kGlobal) {
      const auto src = globals.find(p->second.row);
      if (src == globals.end() || row.relation != src->second->relation ||
          !(row.body == src->second->body)) {
        bad.push_back(row.label);
      }
      continue;
    }
    if (p == m.provenance.end() || p->second.role != RowRole::kTermConstraint) {
      bad.push_back(row.label);
      continue;
    }
    const auto src = sources.find(p->second.row);
    if (src == sources.end() || row.relation != src->second->relation ||
        !(row.body == rename(src->second->body, renames.at(p->second.row)))) {
      bad.push_back(row.label);
    }
  }
  return bad;
}

}  // namespace gdpc::testing

#endif  // GDPC_TESTS_SUPPORT_HPP_
