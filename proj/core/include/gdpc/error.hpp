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

#ifndef GDPC_ERROR_HPP_
#define GDPC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdpc {

// Every failure the pipeline can raise. The CLI maps each code to exactly
// one exit status (see ErrorClassOf).
enum class ErrorCode {
  kNegateEq,
  kDomain,
  kSyntax,
  kUndeclared,
  kRedeclared,
  kNoPriorDef,
  kUnboundedDisagg,
  kTooLarge,
  kEmptyDisjunction,
  kMUnbounded,
  kEpsNonpositive,
  kCountMismatch,
  kProvenanceMissing,
  kTooManyBinaries,
  kNoBranch,
  kInvalidModel,
  kIo,
};

enum class ErrorClass { kModel, kUsage };

std::string_view to_string(ErrorCode code);
ErrorClass ErrorClassOf(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  // Message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace gdpc

#endif  // GDPC_ERROR_HPP_
