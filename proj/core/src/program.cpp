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
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "gdpc/error.hpp"
#include "gdpc/interval.hpp"
#include "gdpc/program.hpp"

namespace gdpc {

Condition Condition::Compare(Comparison c) {
  Condition out;
  out.kind = Kind::kCompare;
  out.cmp = std::move(c);
  return out;
}

Condition Condition::And(std::vector<Condition> parts) {
  if (parts.size() == 1) return std::move(parts[0]);
  Condition out;
  out.kind = Kind::kAnd;
  out.parts = std::move(parts);
  return out;
}

Condition Condition::Or(std::vector<Condition> parts) {
  if (parts.size() == 1) return std::move(parts[0]);
  Condition out;
  out.kind = Kind::kOr;
  out.parts = std::move(parts);
  return out;
}

Condition Condition::Not(Condition c) {
  Condition out;
  out.kind = Kind::kNot;
  out.parts.push_back(std::move(c));
  return out;
}

Condition Condition::Flag(std::string name) {
  Condition out;
  out.kind = Kind::kFlag;
  out.flag = std::move(name);
  return out;
}

bool operator==(const Condition& a, const Condition& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Condition::Kind::kCompare: return a.cmp == b.cmp;
    case Condition::Kind::kFlag: return a.flag == b.flag;
    default: return a.parts == b.parts;
  }
}

Statement Statement::Assign(std::string target, Expr rhs, int line) {
  Statement s;
  s.kind = Kind::kAssign;
  s.target = std::move(target);
  s.rhs = std::move(rhs);
  s.line = line;
  return s;
}

Statement Statement::If(IfBlock block, int line) {
  Statement s;
  s.kind = Kind::kIf;
  s.block = std::move(block);
  s.line = line;
  return s;
}

// Source positions are deliberately ignored by the equality operators.
bool operator==(const Branch& a, const Branch& b) {
  return a.condition == b.condition && a.body == b.body;
}

bool operator==(const IfBlock& a, const IfBlock& b) {
  return a.branches == b.branches && a.has_else == b.has_else &&
         a.else_body == b.else_body && a.disaggregate == b.disaggregate;
}

bool operator==(const Statement& a, const Statement& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Statement::Kind::kAssign) return a.target == b.target && a.rhs == b.rhs;
  return a.block == b.block;
}

bool operator==(const IfElseProgram& a, const IfElseProgram& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    if (a.decls[i].name != b.decls[i].name || a.decls[i].lb != b.decls[i].lb ||
        a.decls[i].ub != b.decls[i].ub) {
      return false;
    }
  }
  return a.params == b.params && a.statements == b.statements;
}

const Variable* IfElseProgram::find_decl(std::string_view name) const {
  for (const auto& v : decls) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::optional<double> IfElseProgram::param(std::string_view name) const {
  for (const auto& [n, v] : params) {
    if (n == name) return v;
  }
  return std::nullopt;
}

Binding IfElseProgram::param_binding() const {
  Binding b;
  for (const auto& [n, v] : params) b[n] = v;
  return b;
}

void CollectAssigned(const std::vector<Statement>& stmts, std::set<std::string>& out) {
  for (const auto& s : stmts) {
    if (!s.is_if()) {
      out.insert(s.target);
      continue;
    }
    for (const auto& br : s.block.branches) CollectAssigned(br.body, out);
    CollectAssigned(s.block.else_body, out);
  }
}

void CollectReads(const Condition& c, std::set<std::string>& out) {
  if (c.kind == Condition::Kind::kCompare) {
    for (const auto& v : variables_of(c.cmp.lhs)) out.insert(v);
    for (const auto& v : variables_of(c.cmp.rhs)) out.insert(v);
    return;
  }
  for (const auto& p : c.parts) CollectReads(p, out);
}

std::set<std::string> IfElseProgram::assigned_variables() const {
  std::set<std::string> out;
  CollectAssigned(statements, out);
  return out;
}

std::vector<std::string> IfElseProgram::input_variables() const {
  const auto assigned = assigned_variables();
  std::vector<std::string> out;
  for (const auto& v : decls) {
    if (!assigned.count(v.name)) out.push_back(v.name);
  }
  return out;
}

// --- pretty printing --------------------------------------------------------

namespace {

std::string Bound(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return FormatNumber(v);
}

std::string ConditionString(const Condition& c, int parent) {
  // 0 = top, 1 = inside or, 2 = inside and, 3 = inside not
  switch (c.kind) {
    case Condition::Kind::kCompare:
      return to_string(c.cmp.lhs) + " " + std::string(to_string(c.cmp.relation)) + " " +
             to_string(c.cmp.rhs);
    case Condition::Kind::kFlag:
      return "{" + c.flag + "}";
    case Condition::Kind::kNot:
      return "not " + ConditionString(c.parts[0], 3);
    case Condition::Kind::kAnd:
    case Condition::Kind::kOr: {
      const bool is_and = c.kind == Condition::Kind::kAnd;
      const int me = is_and ? 2 : 1;
      std::string s;
      for (std::size_t i = 0; i < c.parts.size(); ++i) {
        if (i) s += is_and ? " and " : " or ";
        s += ConditionString(c.parts[i], me);
      }
      return parent >= me ? "(" + s + ")" : s;
    }
  }
  return "?";
}

void PrintStatements(const std::vector<Statement>& stmts, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& s : stmts) {
    if (!s.is_if()) {
      os << pad << s.target << " = " << to_string(s.rhs) << ";\n";
      continue;
    }
    if (!s.block.disaggregate.empty()) {
      os << pad << "disaggregate ";
      for (std::size_t i = 0; i < s.block.disaggregate.size(); ++i) {
        os << (i ? ", " : "") << s.block.disaggregate[i];
      }
      os << " in block;\n";
    }
    for (std::size_t i = 0; i < s.block.branches.size(); ++i) {
      os << pad << (i ? "else if " : "if ") << to_string(s.block.branches[i].condition)
         << " then\n";
      PrintStatements(s.block.branches[i].body, indent + 1, os);
    }
    if (s.block.has_else) {
      os << pad << "else\n";
      PrintStatements(s.block.else_body, indent + 1, os);
    }
    os << pad << "end\n";
  }
}

}  // namespace

std::string to_string(const Condition& c) { return ConditionString(c, 0); }

std::string pretty_print(const IfElseProgram& p) {
  std::ostringstream os;
  for (const auto& v : p.decls) {
    os << "var " << v.name << " in [" << Bound(v.lb) << ", " << Bound(v.ub) << "];\n";
  }
  for (const auto& [n, v] : p.params) os << "param " << n << " = " << FormatNumber(v) << ";\n";
  PrintStatements(p.statements, 0, os);
  return os.str();
}

// --- validation -------------------------------------------------------------

namespace {

enum class Truth { kFalse, kTrue, kUnknown };

Truth ComparisonTruth(const Comparison& c, const Box& box) {
  Interval iv;
  try {
    iv = interval_bounds(c.to_constraint().body, box);
  } catch (const Error&) {
    return Truth::kUnknown;
  }
  if (c.relation == Relation::kLe) {
    if (iv.hi <= 0) return Truth::kTrue;
    if (iv.lo > 0) return Truth::kFalse;
  } else {
    if (iv.lo >= 0) return Truth::kTrue;
    if (iv.hi < 0) return Truth::kFalse;
  }
  return Truth::kUnknown;
}

Truth ConditionTruth(const Condition& c, const Box& box) {
  switch (c.kind) {
    case Condition::Kind::kCompare:
      return ComparisonTruth(c.cmp, box);
    case Condition::Kind::kFlag:
      return Truth::kUnknown;
    case Condition::Kind::kNot: {
      Truth t = ConditionTruth(c.parts[0], box);
      if (t == Truth::kUnknown) return t;
      return t == Truth::kTrue ? Truth::kFalse : Truth::kTrue;
    }
    case Condition::Kind::kAnd:
    case Condition::Kind::kOr: {
      const bool is_and = c.kind == Condition::Kind::kAnd;
      bool unknown = false;
      for (const auto& p : c.parts) {
        Truth t = ConditionTruth(p, box);
        if (is_and && t == Truth::kFalse) return Truth::kFalse;
        if (!is_and && t == Truth::kTrue) return Truth::kTrue;
        unknown = unknown || t == Truth::kUnknown;
      }
      if (unknown) return Truth::kUnknown;
      return is_and ? Truth::kTrue : Truth::kFalse;
    }
  }
  return Truth::kUnknown;
}

class Validator {
 public:
  explicit Validator(const IfElseProgram& p) : p_(p) {
    for (const auto& v : p.decls) box_[v.name] = {v.lb, v.ub};
    for (const auto& [n, v] : p.params) box_[n] = {v, v};
    assigned_ = p.assigned_variables();
  }

  std::vector<Diagnostic> Run() {
    std::set<std::string> defined;
    Walk(p_.statements, defined, /*in_block=*/false);
    return std::move(out_);
  }

 private:
  void Read(const std::set<std::string>& vars, const std::set<std::string>& defined, int line,
            bool in_block) {
    for (const auto& v : vars) {
      if (p_.is_param(v)) continue;
      if (in_block) Unbounded(v, line);
      if (assigned_.count(v) && !defined.count(v) && reported_read_.insert(v).second) {
        out_.push_back({"D_READ_BEFORE_ASSIGN", Diagnostic::Severity::kWarning,
                        fmt::format("'{}' is read before any assignment but is not an input", v),
                        line});
      }
      last_read_[v] = counter_;
    }
  }

  void Unbounded(const std::string& v, int line) {
    const Variable* d = p_.find_decl(v);
    if (d && !(Interval{d->lb, d->ub}.bounded()) && reported_unbounded_.insert(v).second) {
      out_.push_back({"D_UNBOUNDED", Diagnostic::Severity::kError,
                      fmt::format("'{}' is used in a conditional block but has infinite bounds", v),
                      line});
    }
  }

  void Walk(const std::vector<Statement>& stmts, std::set<std::string>& defined, bool in_block) {
    // Last unread top-level assignment per variable in this statement list.
    std::map<std::string, std::pair<long, int>> pending;
    for (const auto& s : stmts) {
      ++counter_;
      if (!s.is_if()) {
        Read(variables_of(s.rhs), defined, s.line, in_block);
        if (in_block) Unbounded(s.target, s.line);
        auto it = pending.find(s.target);
        if (it != pending.end()) {
          auto lr = last_read_.find(s.target);
          if (lr == last_read_.end() || lr->second < it->second.first) {
            out_.push_back({"D_DEAD_ASSIGN", Diagnostic::Severity::kWarning,
                            fmt::format("assignment to '{}' on line {} is overwritten before use",
                                        s.target, it->second.second),
                            s.line});
          }
        }
        pending[s.target] = {counter_, s.line};
        defined.insert(s.target);
        continue;
      }
      const IfBlock& blk = s.block;
      std::set<std::string> after = defined;
      bool covered = false;
      for (std::size_t i = 0; i < blk.branches.size(); ++i) {
        const Branch& br = blk.branches[i];
        if (covered) {
          out_.push_back({"D_UNREACHABLE", Diagnostic::Severity::kWarning,
                          "branch can never execute: an earlier condition always holds",
                          br.line});
        }
        std::set<std::string> reads;
        CollectReads(br.condition, reads);
        Read(reads, defined, br.line, true);
        std::set<std::string> inner = defined;
        Walk(br.body, inner, true);
        after.insert(inner.begin(), inner.end());
        if (ConditionTruth(br.condition, box_) == Truth::kTrue) covered = true;
      }
      if (blk.has_else) {
        if (covered) {
          out_.push_back({"D_UNREACHABLE", Diagnostic::Severity::kWarning,
                          "else branch can never execute: an earlier condition always holds",
                          blk.else_line});
        }
        std::set<std::string> inner = defined;
        Walk(blk.else_body, inner, true);
        after.insert(inner.begin(), inner.end());
      }
      defined = std::move(after);
    }
  }

  const IfElseProgram& p_;
  Box box_;
  std::set<std::string> assigned_;
  std::vector<Diagnostic> out_;
  std::set<std::string> reported_read_;
  std::set<std::string> reported_unbounded_;
  std::map<std::string, long> last_read_;
  long counter_ = 0;
};

}  // namespace

std::vector<Diagnostic> validate(const IfElseProgram& p) { return Validator(p).Run(); }

}  // namespace gdpc
