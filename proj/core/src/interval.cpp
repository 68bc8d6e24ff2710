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

#include "gdpc/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gdpc/error.hpp"

namespace gdpc {
namespace {

const Interval kEverything{-kInf, kInf};

// inf * 0 is taken as 0 so that [0,0] * [-inf, inf] stays [0, 0].
double SafeMul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

Interval Mul(Interval a, Interval b) {
  const double p[] = {SafeMul(a.lo, b.lo), SafeMul(a.lo, b.hi),
                      SafeMul(a.hi, b.lo), SafeMul(a.hi, b.hi)};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval Recip(Interval a) {
  if (a.contains(0.0)) return kEverything;
  return {1.0 / a.hi, 1.0 / a.lo};
}

Interval IntPow(Interval a, long n) {
  if (n == 0) return {1.0, 1.0};
  if (n < 0) return Recip(IntPow(a, -n));
  const double lo = std::pow(a.lo, static_cast<double>(n));
  const double hi = std::pow(a.hi, static_cast<double>(n));
  if (n % 2 == 1) return {lo, hi};
  if (a.lo >= 0) return {lo, hi};
  if (a.hi <= 0) return {hi, lo};
  return {0.0, std::max(lo, hi)};
}

Interval RealPow(Interval a, double k) {
  if (a.hi < 0) throw Error(ErrorCode::kDomain, "fractional power of a negative range");
  a.lo = std::max(a.lo, 0.0);
  if (k > 0) return {std::pow(a.lo, k), std::pow(a.hi, k)};
  if (a.lo == 0.0) return {std::pow(a.hi, k), kInf};
  return {std::pow(a.hi, k), std::pow(a.lo, k)};
}

// Range of sin over [lo, hi] using the critical points pi/2 + k*pi.
Interval SinRange(Interval a) {
  if (!a.bounded() || a.hi - a.lo >= 2 * std::numbers::pi) return {-1.0, 1.0};
  double lo = std::min(std::sin(a.lo), std::sin(a.hi));
  double hi = std::max(std::sin(a.lo), std::sin(a.hi));
  const double half_pi = std::numbers::pi / 2;
  for (double k = std::ceil((a.lo - half_pi) / std::numbers::pi);
       half_pi + k * std::numbers::pi <= a.hi; k += 1.0) {
    const double s = std::sin(half_pi + k * std::numbers::pi);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {std::max(lo, -1.0), std::min(hi, 1.0)};
}

Interval Eval(const Expr& e, const Box& box) {
  switch (e.op()) {
    case Op::kConst:
      return {e.value(), e.value()};
    case Op::kVar: {
      auto it = box.find(e.name());
      if (it == box.end()) {
        throw Error(ErrorCode::kInvalidModel, "no bounds for variable '" + e.name() + "'");
      }
      return it->second;
    }
    case Op::kNeg: {
      Interval a = Eval(e.arg(0), box);
      return {-a.hi, -a.lo};
    }
    case Op::kAdd: {
      Interval a = Eval(e.arg(0), box), b = Eval(e.arg(1), box);
      return {a.lo + b.lo, a.hi + b.hi};
    }
    case Op::kSub: {
      Interval a = Eval(e.arg(0), box), b = Eval(e.arg(1), box);
      return {a.lo - b.hi, a.hi - b.lo};
    }
    case Op::kMul:
      return Mul(Eval(e.arg(0), box), Eval(e.arg(1), box));
    case Op::kDiv:
      return Mul(Eval(e.arg(0), box), Recip(Eval(e.arg(1), box)));
    case Op::kPow: {
      Interval a = Eval(e.arg(0), box);
      const double k = e.arg(1).value();
      if (k == std::floor(k) && std::fabs(k) < 1e9) return IntPow(a, static_cast<long>(k));
      return RealPow(a, k);
    }
    case Op::kCall: {
      Interval a = Eval(e.arg(0), box);
      switch (e.fn()) {
        case Fn::kExp:
          return {std::exp(a.lo), std::exp(a.hi)};
        case Fn::kLog:
          if (a.hi <= 0) throw Error(ErrorCode::kDomain, "log of a nonpositive range in " + to_string(e));
          return {a.lo <= 0 ? -kInf : std::log(a.lo), std::log(a.hi)};
        case Fn::kSqrt:
          if (a.hi < 0) throw Error(ErrorCode::kDomain, "sqrt of a negative range in " + to_string(e));
          return {std::sqrt(std::max(a.lo, 0.0)), std::sqrt(a.hi)};
        case Fn::kSin:
          return SinRange(a);
        case Fn::kCos:
          return SinRange({a.lo + std::numbers::pi / 2, a.hi + std::numbers::pi / 2});
        case Fn::kAbs:
          if (a.lo >= 0) return a;
          if (a.hi <= 0) return {-a.hi, -a.lo};
          return {0.0, std::max(-a.lo, a.hi)};
      }
    }
  }
  return kEverything;
}

}  // namespace

Interval interval_bounds(const Expr& e, const Box& box) {
  Interval r = Eval(e, box);
  if (std::isnan(r.lo) || std::isnan(r.hi)) return kEverything;
  return r;
}

}  // namespace gdpc
