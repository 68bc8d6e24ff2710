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

#ifndef GDPC_TOOLS_CLI_HPP_
#define GDPC_TOOLS_CLI_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdpc/model.hpp"
#include "gdpc/reformulate.hpp"

namespace gdpc::cli {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitModelError = 1;
inline constexpr int kExitUsageError = 2;
inline constexpr int kExitVerifyFailed = 3;

enum class EmitFormat { kJson, kText };
enum class ColorMode { kAuto, kAlways, kNever };

struct CliConfig {
  std::string input;
  Method method = Method::kTrueFalse;
  double eps = kDefaultEps;
  bool eps_given = false;
  HullVariant hull_variant = HullVariant::kLeeGrossmann;
  bool hull_variant_given = false;
  BigMPolicy bigm;
  EmitFormat emit = EmitFormat::kJson;
  std::string output;  // empty: stdout
  bool verify = false;
  int grid = 10;
  std::string dump_pass;
  std::string report_json;
  ColorMode color = ColorMode::kAuto;
};

// Runs `gdpc <args...>` (args excludes the program name). The model goes to
// `out`; statistics, diagnostics and verification reports go to `err`.
// `color_env` is the value of GDPC_COLOR, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& color_env = std::nullopt);

// Executes an already parsed configuration.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gdpc::cli

#endif  // GDPC_TOOLS_CLI_HPP_
