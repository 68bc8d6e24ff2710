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

#ifndef GDPC_INTERVAL_HPP_
#define GDPC_INTERVAL_HPP_

#include <limits>
#include <map>
#include <string>

#include "gdpc/expr.hpp"

namespace gdpc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool bounded() const { return lo > -kInf && hi < kInf; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

using Box = std::map<std::string, Interval, std::less<>>;

// Natural interval extension of e over the box. Every variable of e must
// have an entry. A denominator interval containing zero yields [-inf, inf].
// Throws E_DOMAIN when a function is undefined on the whole argument range.
Interval interval_bounds(const Expr& e, const Box& box);

}  // namespace gdpc

#endif  // GDPC_INTERVAL_HPP_
