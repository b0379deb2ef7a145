// Copyright 2026 The convsec Authors.
//
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

// Scalar root finding and 1-D maximization shared by the core modules.

#ifndef CONVSEC_SRC_NUMERIC_H_
#define CONVSEC_SRC_NUMERIC_H_

#include <functional>

namespace convsec::internal {

inline constexpr double kRootTolerance = 1e-9;
inline constexpr double kStationarityTolerance = 1e-8;
// Brackets grow by doubling up to this bound before giving up.
inline constexpr double kBracketCap = 1152921504606846976.0;  // 2^60

struct Maximum {
  double arg = 0.0;
  double value = 0.0;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi]. The
// endpoints are compared against the interior result so that boundary maxima
// are reported exactly.
Maximum GoldenSectionMax(const std::function<double(double)>& f, double lo,
                         double hi, double tol);

// Smallest x in [lo, hi] with pred(x) true, for pred monotone false -> true.
// Stops once the bracket is no wider than tol * max(1, |hi|) or can no
// longer be split in floating point. Returns hi.
double BisectMonotone(const std::function<bool(double)>& pred, double lo,
                      double hi, double tol);

// Grows hi from start by doubling until pred(hi) holds. Returns false if
// kBracketCap is passed first.
bool ExpandBracket(const std::function<bool(double)>& pred, double start,
                   double* hi);

// sup_{t >= 0} [lam * t - f(t)] for convex non-decreasing f with f(0) = 0,
// given its derivative. The maximizer is the root of slope(t) = lam, found by
// bisection on the slope. Returns false if no root is found below the cap
// (the supremum is then treated as unbounded). *argmax receives the root.
bool HalfLineConjugate(const std::function<double(double)>& f,
                       const std::function<double(double)>& slope, double lam,
                       double* value, double* argmax);

}  // namespace convsec::internal

#endif  // CONVSEC_SRC_NUMERIC_H_
