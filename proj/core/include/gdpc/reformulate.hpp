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

#ifndef GDPC_REFORMULATE_HPP_
#define GDPC_REFORMULATE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdpc/model.hpp"

namespace gdpc {

// Growth of a reformulation relative to its GDP.
//
// Counting convention, shared by all backends: a two-sided box (rows sharing
// a provenance row key) counts once; exactly-one rows and logic-clause rows
// are never counted; hat definitions, box rows and linking rows are.
//   true-false: added_vars = sum 3*n_k*m_k,  added_constraints = sum n_k + 3*n_k*m_k
//   hull-eps:   added_vars = sum n_k*m_k,    added_constraints = sum n_k + n_k*m_k
//   bigm:       added_vars = number of indicator binaries,
//               added_constraints = extra rows from splitting equalities
struct ReformStats {
  Method method = Method::kNone;
  std::map<std::string, int> n_per_disjunction;  // disaggregated variables
  std::map<std::string, int> m_per_disjunction;  // terms
  int q = 0;                                     // disjunctions
  long added_vars = 0;
  long added_constraints = 0;

  friend bool operator==(const ReformStats&, const ReformStats&) = default;
};

struct Reformulation {
  MinlpModel model;
  ReformStats stats;
};

// Auxiliary names.
std::string LambdaName(const std::string& disjunction, int term);
std::string HatName(const std::string& var, const std::string& disjunction, int term);
std::string NuTrueName(const std::string& var, const std::string& disjunction, int term);
std::string NuFalseName(const std::string& var, const std::string& disjunction, int term);
std::string NuHullName(const std::string& var, const std::string& disjunction, int term);

Reformulation reformulate_true_false(const GdpModel& g);

struct BigMPolicy {
  // Used for every row when set (CLI --bigm).
  std::optional<double> global_m;
  // Per source constraint label; takes precedence over interval bounds.
  std::map<std::string, double> per_constraint;
};

// Throws E_M_UNBOUNDED when a row's interval enclosure is infinite and no M
// was supplied for it.
Reformulation reformulate_bigm(const GdpModel& g, const BigMPolicy& policy = {});

enum class HullVariant { kLeeGrossmann, kSawaya2 };
std::string_view to_string(HullVariant v);
std::optional<HullVariant> HullVariantFromString(std::string_view s);

inline constexpr double kDefaultEps = 1e-6;
inline constexpr double kMinEps = 1e-12;

// Throws E_EPS_NONPOSITIVE for eps <= 0 (and eps < kMinEps), E_DOMAIN when
// sawaya-2 needs h(0) of a constraint that mentions shared variables or is
// undefined at zero.
Reformulation reformulate_hull_eps(const GdpModel& g, double eps = kDefaultEps,
                                   HullVariant variant = HullVariant::kLeeGrossmann);

// The epsilon perspective of h (read as h <= 0): (lambda+eps) * h(nu/(lambda+eps)),
// plus h(0)*(lambda-1) for sawaya-2. `nu_names` maps each disaggregated
// variable of h to its copy; other variables stay as they are.
Expr epsilon_perspective(const Expr& h, const std::map<std::string, std::string>& nu_names,
                         const std::string& lambda, double eps, HullVariant variant);

// Value of the epsilon perspective of h when every variable of h is
// disaggregated and takes the value nu[var].
double perspective_value(const Expr& h, const Binding& nu, double lambda, double eps,
                         HullVariant variant);

// Recounts from provenance and checks the closed forms above. Throws
// E_PROVENANCE_MISSING for a row without provenance and E_COUNT_MISMATCH when
// the counts disagree.
ReformStats stats(const MinlpModel& m, const GdpModel& g);

Reformulation reformulate(const GdpModel& g, Method method, double eps = kDefaultEps,
                          HullVariant variant = HullVariant::kLeeGrossmann,
                          const BigMPolicy& policy = {});

}  // namespace gdpc

#endif  // GDPC_REFORMULATE_HPP_
