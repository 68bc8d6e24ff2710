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

#include "cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "gdpc/emit.hpp"
#include "gdpc/error.hpp"
#include "gdpc/normalize.hpp"
#include "gdpc/verify.hpp"

namespace gdpc::cli {
namespace {

// Thrown for invalid flag combinations found after parsing.
struct UsageError {
  std::string message;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) {
    throw Error(ErrorCode::kIo, fmt::format("cannot write '{}'", path));
  }
}

class Painter {
 public:
  explicit Painter(bool enabled) : enabled_(enabled) {}
  std::string operator()(std::string_view text, std::string_view code) const {
    if (!enabled_) return std::string(text);
    return fmt::format("\x1b[{}m{}\x1b[0m", code, text);
  }

 private:
  bool enabled_;
};

bool UseColor(ColorMode mode) {
  switch (mode) {
    case ColorMode::kAlways: return true;
    case ColorMode::kNever: return false;
    case ColorMode::kAuto: return isatty(fileno(stderr)) != 0;
  }
  return false;
}

void ValidateConfig(const CliConfig& c) {
  if (c.eps_given && c.method != Method::kHullEps) {
    throw UsageError{"--eps is only valid with --method hull-eps"};
  }
  if (c.hull_variant_given && c.method != Method::kHullEps) {
    throw UsageError{"--hull-variant is only valid with --method hull-eps"};
  }
  if ((c.bigm.global_m || !c.bigm.per_constraint.empty()) && c.method != Method::kBigM) {
    throw UsageError{"--bigm and --bigm-row are only valid with --method bigm"};
  }
  if (c.method == Method::kHullEps && !(c.eps >= kMinEps)) {
    throw Error(ErrorCode::kEpsNonpositive,
                fmt::format("epsilon must be at least {} (got {})", FormatNumber(kMinEps),
                            FormatNumber(c.eps)));
  }
  if (c.bigm.global_m && !(*c.bigm.global_m > 0)) {
    throw UsageError{"--bigm must be positive"};
  }
  if (!c.report_json.empty() && !c.verify) {
    throw UsageError{"--report-json requires --verify"};
  }
  if (c.grid < 1) throw UsageError{"--grid must be at least 1"};
}

std::string StatsLine(const ReformStats& s) {
  long sum_m = 0;
  std::string n;
  for (const auto& [k, m] : s.m_per_disjunction) sum_m += m;
  for (const auto& [k, count] : s.n_per_disjunction) {
    n += fmt::format("{}{}:{}", n.empty() ? "" : ",", k, count);
  }
  return fmt::format("method={} q={} sum_m={} n={} added_vars={} added_constraints={}\n",
                     to_string(s.method), s.q, sum_m, n.empty() ? "-" : n, s.added_vars,
                     s.added_constraints);
}

int Execute(const CliConfig& c, std::ostream& out, std::ostream& err, const Painter& paint) {
  const Compilation comp = compile_source(ReadFile(c.input));
  for (const Diagnostic& d : comp.diagnostics) {
    const bool is_error = d.severity == Diagnostic::Severity::kError;
    err << fmt::format("{}: {}{}: {}\n",
                       paint(is_error ? "error" : "warning", is_error ? "31" : "33"), d.code,
                       d.line > 0 ? fmt::format(" (line {})", d.line) : "", d.message);
  }
  if (!c.dump_pass.empty()) {
    out << dump_pass(comp, c.dump_pass);
    return kExitOk;
  }
  const Reformulation r = reformulate(comp.gdp(), c.method, c.eps, c.hull_variant, c.bigm);
  std::string text = c.emit == EmitFormat::kJson ? emit_json(r.model) : emit_algebraic(r.model);
  if (text.empty() || text.back() != '\n') text += '\n';
  if (c.output.empty()) {
    out << text;
  } else {
    WriteFile(c.output, text);
  }
  err << StatsLine(r.stats);
  if (!c.verify) return kExitOk;

  GridSpec grid;
  grid.points_per_dim = c.grid;
  const EquivalenceReport report = verify(comp, r.model, grid);
  err << report_to_text(report);
  if (!c.report_json.empty()) WriteFile(c.report_json, report_to_json(report) + "\n");
  return report.equivalent() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const Painter paint(UseColor(config.color));
  try {
    ValidateConfig(config);
    return Execute(config, out, err, paint);
  } catch (const UsageError& e) {
    err << paint("error", "31") << ": " << e.message << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << paint("error", "31") << ": " << e.what() << "\n";
    return ErrorClassOf(e.code()) == ErrorClass::kUsage ? kExitUsageError : kExitModelError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& color_env) {
  CliConfig config;
  if (color_env) {
    if (*color_env == "always") {
      config.color = ColorMode::kAlways;
    } else if (*color_env == "never") {
      config.color = ColorMode::kNever;
    } else if (*color_env == "auto" || color_env->empty()) {
      config.color = ColorMode::kAuto;
    } else {
      err << "error: GDPC_COLOR must be one of auto, always, never\n";
      return kExitUsageError;
    }
  }

  CLI::App app{"gdpc: compile if/else optimization models into MINLPs", "gdpc"};
  app.require_subcommand(1);
  CLI::App* compile = app.add_subcommand("compile", "Compile a .gdp model");
  compile->add_option("file", config.input, "Input model (.gdp)")->required();

  std::string method = "true-false";
  compile->add_option("--method", method, "Reformulation method")
      ->check(CLI::IsMember({"true-false", "bigm", "hull-eps"}))
      ->capture_default_str();
  CLI::Option* eps = compile->add_option("--eps", config.eps, "Hull epsilon (hull-eps only)");
  std::string variant = "lee-grossmann";
  CLI::Option* hv = compile->add_option("--hull-variant", variant, "Epsilon perspective variant")
                        ->check(CLI::IsMember({"lee-grossmann", "sawaya-2"}));
  double bigm = 0.0;
  CLI::Option* bigm_opt = compile->add_option("--bigm", bigm, "Big-M value for every row");
  std::vector<std::string> bigm_rows;
  compile->add_option("--bigm-row", bigm_rows, "Big-M for one source row, as LABEL=M");
  std::string emit = "json";
  compile->add_option("--emit", emit, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  compile->add_option("-o,--output", config.output, "Write the model here instead of stdout");
  compile->add_flag("--verify", config.verify, "Check equivalence on a grid of the inputs");
  compile->add_option("--grid", config.grid, "Grid points per input variable")
      ->capture_default_str();
  compile->add_option("--dump-pass", config.dump_pass, "Print one pass's output and stop")
      ->check(CLI::IsMember(pass_names()));
  compile->add_option("--report-json", config.report_json, "Write the verification report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  }

  config.method = *MethodFromString(method);
  config.eps_given = eps->count() > 0;
  config.hull_variant = *HullVariantFromString(variant);
  config.hull_variant_given = hv->count() > 0;
  config.emit = emit == "json" ? EmitFormat::kJson : EmitFormat::kText;
  if (bigm_opt->count() > 0) config.bigm.global_m = bigm;
  for (const std::string& row : bigm_rows) {
    const auto eq = row.rfind('=');
    double value = 0.0;
    try {
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument(row);
      std::size_t used = 0;
      value = std::stod(row.substr(eq + 1), &used);
      if (used != row.size() - eq - 1 || !(value > 0)) throw std::invalid_argument(row);
    } catch (const std::exception&) {
      err << "error: --bigm-row expects LABEL=M with M > 0, got '" << row << "'\n";
      return kExitUsageError;
    }
    config.bigm.per_constraint[row.substr(0, eq)] = value;
  }
  return run(config, out, err);
}

}  // namespace gdpc::cli
