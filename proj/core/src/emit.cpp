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

#include "gdpc/emit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gdpc/error.hpp"
#include "gdpc/interval.hpp"

namespace gdpc {

namespace {

using nlohmann::json;

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(ch));
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string Number(double v) {
  if (v == kInf) return "\"inf\"";
  if (v == -kInf) return "\"-inf\"";
  if (v == 0.0) return "0";  // also folds -0
  return fmt::format("{:.17g}", v);
}

std::string_view OpSymbol(Op op) {
  switch (op) {
    case Op::kAdd: return "+";
    case Op::kSub: return "-";
    case Op::kMul: return "*";
    case Op::kDiv: return "/";
    case Op::kPow: return "^";
    case Op::kNeg: return "neg";
    default: return "?";
  }
}

void WriteExpr(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::kConst: out += "[\"const\"," + Number(e.value()) + "]"; return;
    case Op::kVar: out += "[\"var\"," + Quote(e.name()) + "]"; return;
    case Op::kCall:
      out += "[\"call\"," + Quote(to_string(e.fn())) + ",1,";
      WriteExpr(e.arg(0), out);
      out += "]";
      return;
    default:
      out += "[" + Quote(OpSymbol(e.op())) + "," + std::to_string(e.arity());
      for (std::size_t i = 0; i < e.arity(); ++i) {
        out += ",";
        WriteExpr(e.arg(i), out);
      }
      out += "]";
  }
}

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidModel, "malformed model document: " + what);
}

double ReadNumber(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  Bad(std::string("expected a number for ") + what);
}

const json& Field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) Bad(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string ReadString(const json& obj, const char* key) {
  const json& j = Field(obj, key);
  if (!j.is_string()) Bad(std::string("field '") + key + "' must be a string");
  return j.get<std::string>();
}

Expr ReadExpr(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_string()) Bad("expression must be a tagged array");
  const auto tag = j[0].get<std::string>();
  if (tag == "const") {
    if (j.size() != 2) Bad("const takes one value");
    return Expr::Constant(ReadNumber(j[1], "constant"));
  }
  if (tag == "var") {
    if (j.size() != 2 || !j[1].is_string()) Bad("var takes one name");
    return Expr::Var(j[1].get<std::string>());
  }
  if (tag == "call") {
    if (j.size() != 4 || !j[1].is_string()) Bad("call takes a name, arity 1 and an argument");
    auto fn = FnFromName(j[1].get<std::string>());
    if (!fn) Bad("unknown function " + j[1].get<std::string>());
    return Expr::Call(*fn, ReadExpr(j[3]));
  }
  if (j.size() < 2 || !j[1].is_number_integer()) Bad("operator arity missing");
  const auto arity = j[1].get<std::size_t>();
  if (j.size() != arity + 2) Bad("operator arity does not match its arguments");
  std::vector<Expr> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(ReadExpr(j[i + 2]));
  auto need = [&](std::size_t n) {
    if (arity != n) Bad("operator " + tag + " has wrong arity");
  };
  if (tag == "neg") {
    need(1);
    return Expr::Neg(args[0]);
  }
  need(2);
  if (tag == "+") return Expr::Add(args[0], args[1]);
  if (tag == "-") return Expr::Sub(args[0], args[1]);
  if (tag == "*") return Expr::Mul(args[0], args[1]);
  if (tag == "/") return Expr::Div(args[0], args[1]);
  if (tag == "^") return Expr::Pow(args[0], args[1]);
  Bad("unknown operator " + tag);
}

}  // namespace

std::string expr_to_json(const Expr& e) {
  std::string out;
  WriteExpr(e, out);
  return out;
}

Expr expr_from_json(std::string_view text) {
  try {
    return ReadExpr(json::parse(text));
  } catch (const json::exception& ex) {
    Bad(ex.what());
  }
}

MinlpModel canonicalize(const MinlpModel& m) {
  MinlpModel out = m;
  std::sort(out.variables.begin(), out.variables.end(),
            [](const Variable& a, const Variable& b) { return a.name < b.name; });
  std::sort(out.constraints.begin(), out.constraints.end(),
            [](const Constraint& a, const Constraint& b) { return a.label < b.label; });
  std::sort(out.binary_exactly_one.begin(), out.binary_exactly_one.end());
  return out;
}

bool structurally_equal(const MinlpModel& a, const MinlpModel& b) {
  const MinlpModel x = canonicalize(a), y = canonicalize(b);
  if (x.method != y.method || x.variables.size() != y.variables.size() ||
      x.constraints.size() != y.constraints.size() ||
      x.binary_exactly_one != y.binary_exactly_one || x.provenance != y.provenance) {
    return false;
  }
  for (std::size_t i = 0; i < x.variables.size(); ++i) {
    const Variable &u = x.variables[i], &v = y.variables[i];
    if (u.name != v.name || u.lb != v.lb || u.ub != v.ub || u.kind != v.kind ||
        u.origin != v.origin || u.aux != v.aux) {
      return false;
    }
  }
  for (std::size_t i = 0; i < x.constraints.size(); ++i) {
    const Constraint &u = x.constraints[i], &v = y.constraints[i];
    if (u.label != v.label || u.relation != v.relation || !(u.body == v.body)) return false;
  }
  return true;
}

std::string emit_json(const MinlpModel& model) {
  const MinlpModel m = canonicalize(model);
  std::string out = "{\"schema_version\":\"1\"";
  if (m.method != Method::kNone) out += ",\"method\":" + Quote(to_string(m.method));
  out += ",\"variables\":[";
  for (std::size_t i = 0; i < m.variables.size(); ++i) {
    const Variable& v = m.variables[i];
    if (i) out += ",";
    out += "{\"name\":" + Quote(v.name) + ",\"lb\":" + Number(v.lb) + ",\"ub\":" + Number(v.ub) +
           ",\"kind\":" + Quote(to_string(v.kind)) + ",\"origin\":" + Quote(to_string(v.origin));
    if (v.aux) {
      out += ",\"aux\":{\"source\":" + Quote(v.aux->source) +
             ",\"disjunction\":" + Quote(v.aux->disjunction) +
             ",\"term\":" + std::to_string(v.aux->term) + "}";
    }
    out += "}";
  }
  out += "],\"constraints\":[";
  for (std::size_t i = 0; i < m.constraints.size(); ++i) {
    const Constraint& c = m.constraints[i];
    if (i) out += ",";
    out += "{\"label\":" + Quote(c.label) + ",\"relation\":" + Quote(to_string(c.relation)) +
           ",\"body\":";
    WriteExpr(c.body, out);
    auto it = m.provenance.find(c.label);
    if (it != m.provenance.end()) {
      out += ",\"provenance\":{\"source\":" + Quote(it->second.source) +
             ",\"role\":" + Quote(to_string(it->second.role)) +
             ",\"row\":" + Quote(it->second.row) + "}";
    }
    out += "}";
  }
  out += "],\"exactly_one_groups\":[";
  for (std::size_t i = 0; i < m.binary_exactly_one.size(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t k = 0; k < m.binary_exactly_one[i].size(); ++k) {
      if (k) out += ",";
      out += Quote(m.binary_exactly_one[i][k]);
    }
    out += "]";
  }
  out += "]}";
  return out;
}

MinlpModel parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    Bad(ex.what());
  }
  if (ReadString(doc, "schema_version") != "1") Bad("unsupported schema_version");
  MinlpModel m;
  if (doc.contains("method")) {
    auto method = MethodFromString(ReadString(doc, "method"));
    if (!method) Bad("unknown method");
    m.method = *method;
  }
  try {
    for (const auto& jv : Field(doc, "variables")) {
      Variable v;
      v.name = ReadString(jv, "name");
      v.lb = ReadNumber(Field(jv, "lb"), "lb");
      v.ub = ReadNumber(Field(jv, "ub"), "ub");
      auto kind = VarKindFromString(ReadString(jv, "kind"));
      auto origin = VarOriginFromString(ReadString(jv, "origin"));
      if (!kind || !origin) Bad("unknown kind or origin for " + v.name);
      v.kind = *kind;
      v.origin = *origin;
      if (jv.contains("aux")) {
        const json& a = jv.at("aux");
        v.aux = AuxInfo{ReadString(a, "source"), ReadString(a, "disjunction"),
                        Field(a, "term").get<int>()};
      }
      m.variables.push_back(std::move(v));
    }
    for (const auto& jc : Field(doc, "constraints")) {
      Constraint c;
      c.label = ReadString(jc, "label");
      auto rel = RelationFromString(ReadString(jc, "relation"));
      if (!rel) Bad("unknown relation in " + c.label);
      c.relation = *rel;
      c.body = ReadExpr(Field(jc, "body"));
      if (jc.contains("provenance")) {
        const json& p = jc.at("provenance");
        auto role = RowRoleFromString(ReadString(p, "role"));
        if (!role) Bad("unknown role in " + c.label);
        m.provenance[c.label] = Provenance{ReadString(p, "source"), *role, ReadString(p, "row")};
      }
      m.constraints.push_back(std::move(c));
    }
    for (const auto& g : Field(doc, "exactly_one_groups")) {
      m.binary_exactly_one.push_back(g.get<std::vector<std::string>>());
    }
  } catch (const json::exception& ex) {
    Bad(ex.what());
  }
  return m;
}

std::string emit_algebraic(const MinlpModel& m) {
  std::ostringstream os;
  os << "# method: " << to_string(m.method) << "\n";
  os << "variables:\n";
  for (const auto& v : m.variables) {
    os << "  " << v.name;
    if (v.kind == VarKind::kBinary) {
      os << " in {0, 1}";
    } else {
      os << " in [" << FormatNumber(v.lb) << ", " << FormatNumber(v.ub) << "]";
    }
    os << "  (" << to_string(v.origin) << ")\n";
  }
  // Group rows by owning disjunction, keeping model order inside a group.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const Constraint*>> by_disjunction;
  std::vector<const Constraint*> clauses, globals;
  for (const auto& c : m.constraints) {
    auto it = m.provenance.find(c.label);
    const std::string source = it == m.provenance.end() ? "global" : it->second.source;
    if (source == "global") {
      globals.push_back(&c);
    } else if (source == "logic-clause") {
      clauses.push_back(&c);
    } else {
      const std::string k = source.substr(0, source.find('/'));
      if (!by_disjunction.count(k)) order.push_back(k);
      by_disjunction[k].push_back(&c);
    }
  }
  auto rows = [&](const std::vector<const Constraint*>& cs) {
    for (const auto* c : cs) os << "  " << c->label << ": " << to_string(*c) << "\n";
  };
  for (const auto& k : order) {
    os << "disjunction " << k << ":\n";
    rows(by_disjunction[k]);
  }
  if (!clauses.empty()) {
    os << "logic:\n";
    rows(clauses);
  }
  if (!globals.empty()) {
    os << "globals:\n";
    rows(globals);
  }
  return os.str();
}

}  // namespace gdpc
