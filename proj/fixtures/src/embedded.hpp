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

#ifndef GDPC_FIXTURES_EMBEDDED_HPP_
#define GDPC_FIXTURES_EMBEDDED_HPP_

#include <map>
#include <string>

namespace gdpc::fixtures_data {

// File name -> contents of every file shipped in the fixtures directory.
const std::map<std::string, std::string, std::less<>>& files();

}  // namespace gdpc::fixtures_data

#endif  // GDPC_FIXTURES_EMBEDDED_HPP_
