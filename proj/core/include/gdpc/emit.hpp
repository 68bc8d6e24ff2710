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

#ifndef GDPC_EMIT_HPP_
#define GDPC_EMIT_HPP_

#include <string>
#include <string_view>

#include "gdpc/model.hpp"

namespace gdpc {

// Canonical JSON document (schema version "1"):
//   {"schema_version":"1", ["method":"true-false",]
//    "variables":[{"name","lb","ub","kind","origin"[,"aux"]}...],
//    "constraints":[{"label","relation","body","provenance"}...],
//    "exactly_one_groups":[[...]...]}
// Arrays are sorted by name/label; numbers carry 17 significant digits;
// infinite bounds are the strings "inf" and "-inf". Expressions are prefix
// arrays: ["const",v], ["var",name], [op,arity,args...] with op in
// + - * / ^ neg, and ["call",fn,1,arg].
std::string emit_json(const MinlpModel& m);

// Inverse of emit_json. Throws E_INVALID_MODEL on malformed documents.
MinlpModel parse_json(std::string_view text);

// Human-readable rendering: variables, then one block per disjunction, then
// logic clauses, then global constraints; one `label: row` per line.
std::string emit_algebraic(const MinlpModel& m);

// Sorted copy used for structural comparison of models.
MinlpModel canonicalize(const MinlpModel& m);
bool structurally_equal(const MinlpModel& a, const MinlpModel& b);

// Expression (de)serialization helpers shared with tests.
std::string expr_to_json(const Expr& e);
Expr expr_from_json(std::string_view text);

}  // namespace gdpc

#endif  // GDPC_EMIT_HPP_
