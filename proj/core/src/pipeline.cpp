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

#include <sstream>

#include <fmt/format.h>

#include "gdpc/error.hpp"
#include "gdpc/normalize.hpp"

namespace gdpc {

Compilation compile(const IfElseProgram& p) {
  Compilation c;
  c.original = p;
  c.diagnostics = p.warnings;
  for (auto& d : validate(p)) c.diagnostics.push_back(std::move(d));
  c.implicit_else = insert_implicit_else(p);
  c.sequential = sequentialize(c.implicit_else);
  c.flattened = flatten_nested(c.sequential);
  for (std::size_t i = c.sequential.warnings.size(); i < c.flattened.warnings.size(); ++i) {
    c.diagnostics.push_back(c.flattened.warnings[i]);
  }
  c.split = split_conditions(c.flattened);
  c.lowering = build_disjunctions(c.split);
  return c;
}

Compilation compile_source(std::string_view source) { return compile(parse_program(source)); }

const std::vector<std::string>& pass_names() {
  static const std::vector<std::string> names = {"parse",   "implicit-else", "sequentialize",
                                                 "flatten", "split",         "gdp"};
  return names;
}

std::string dump_pass(const Compilation& c, std::string_view pass) {
  if (pass == "parse") return pretty_print(c.original);
  if (pass == "implicit-else") return pretty_print(c.implicit_else);
  if (pass == "sequentialize") return pretty_print(c.sequential);
  if (pass == "flatten") return pretty_print(c.flattened);
  if (pass == "split") {
    std::string out = pretty_print(c.split.program);
    for (const auto& b : c.split.blocks) {
      out += fmt::format("# block {}: {} condition disjunction(s)\n", b.block,
                         b.condition_disjunctions.size());
      for (const auto& d : b.condition_disjunctions) {
        out += "#  ";
        for (std::size_t j = 0; j < d.terms.size(); ++j) {
          out += j ? " | " : "";
          out += "[" + d.terms[j].bool_var + ":";
          for (const auto& con : d.terms[j].constraints) out += " " + to_string(con) + ";";
          out += "]";
        }
        out += "\n";
      }
      for (const auto& l : b.links) out += "#  " + l.to_string() + "\n";
    }
    return out;
  }
  if (pass == "gdp") return to_string(c.gdp());
  throw Error(ErrorCode::kInvalidModel, fmt::format("unknown pass '{}'", pass));
}

std::string to_string(const GdpModel& m) {
  std::ostringstream os;
  os << "variables:\n";
  for (const auto& v : m.variables) {
    os << "  " << v.name << " in [" << FormatNumber(v.lb) << ", " << FormatNumber(v.ub) << "] "
       << to_string(v.origin) << "\n";
  }
  os << "globals:\n";
  for (const auto& c : m.global_constraints) os << "  " << c.label << ": " << to_string(c) << "\n";
  for (const auto& d : m.disjunctions) {
    os << "disjunction " << d.id << " (disaggregate:";
    auto it = m.disagg_sets.find(d.id);
    if (it != m.disagg_sets.end()) {
      for (const auto& v : it->second) os << " " << v;
    }
    os << "):\n";
    for (const auto& t : d.terms) {
      os << "  [" << t.bool_var << "]\n";
      for (const auto& c : t.constraints) os << "    " << c.label << ": " << to_string(c) << "\n";
    }
  }
  if (!m.props.empty()) {
    os << "logic:\n";
    for (const auto& p : m.props) os << "  " << p.to_string() << "\n";
  }
  return os.str();
}

}  // namespace gdpc
