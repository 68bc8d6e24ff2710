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

#include "gdpc/error.hpp"

namespace gdpc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegateEq: return "E_NEGATE_EQ";
    case ErrorCode::kDomain: return "E_DOMAIN";
    case ErrorCode::kSyntax: return "E_SYNTAX";
    case ErrorCode::kUndeclared: return "E_UNDECLARED";
    case ErrorCode::kRedeclared: return "E_REDECLARED";
    case ErrorCode::kNoPriorDef: return "E_NO_PRIOR_DEF";
    case ErrorCode::kUnboundedDisagg: return "E_UNBOUNDED_DISAGG";
    case ErrorCode::kTooLarge: return "E_TOO_LARGE";
    case ErrorCode::kEmptyDisjunction: return "E_EMPTY_DISJUNCTION";
    case ErrorCode::kMUnbounded: return "E_M_UNBOUNDED";
    case ErrorCode::kEpsNonpositive: return "E_EPS_NONPOSITIVE";
    case ErrorCode::kCountMismatch: return "E_COUNT_MISMATCH";
    case ErrorCode::kProvenanceMissing: return "E_PROVENANCE_MISSING";
    case ErrorCode::kTooManyBinaries: return "E_TOO_MANY_BINARIES";
    case ErrorCode::kNoBranch: return "E_NO_BRANCH";
    case ErrorCode::kInvalidModel: return "E_INVALID_MODEL";
    case ErrorCode::kIo: return "E_IO";
  }
  return "E_UNKNOWN";
}

ErrorClass ErrorClassOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEpsNonpositive:
    case ErrorCode::kIo:
      return ErrorClass::kUsage;
    default:
      return ErrorClass::kModel;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace gdpc
