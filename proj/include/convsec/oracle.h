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

// Ground-truth solvers for small instances. None of these share code with
// the approximation algorithms they are used to check: the fractional
// optimum here is computed by accelerated projected gradient rather than by
// the Frank-Wolfe solver in fopt.h.

#ifndef CONVSEC_ORACLE_H_
#define CONVSEC_ORACLE_H_

#include <string>

#include "convsec/instance.h"

namespace convsec {

enum class BoundKind { kExact, kLower, kUpper };

std::string BoundKindName(BoundKind kind);

// `value` is the reported number; `bound_kind` says how it relates to the
// true optimum (exhaustive search is exact, a grid gives a lower bound, a
// certified fractional solve gives an upper bound).
struct OracleResult {
  double value = 0.0;
  Subset witness;  // integral witness, when there is one
  Vec x;           // fractional witness, when there is one
  std::string method;
  BoundKind bound_kind = BoundKind::kExact;
  // Fractional methods: pi at the witness x, and the duality gap there.
  double achieved = 0.0;
  double gap = 0.0;
  // Grid step actually used by GridFopt.
  double resolution = 0.0;
};

// Exact max of pi over independent sets, by depth-first enumeration with
// independence pruning. TooLarge if n > cap.
OracleResult BruteForceOpt(const Instance& inst, int cap = 20);

// Exhaustive max of pi over independent subsets of `universe`.
OracleResult BestFilteredFeasible(const Instance& inst, const Subset& universe,
                                  int cap = 20);

// Max of pi over a uniform grid of the matroid polytope. The number of grid
// points is bounded by `max_points`; the step is coarsened if needed and the
// one actually used is reported in `resolution`. A lower bound on fopt.
OracleResult GridFopt(const Instance& inst, double grid_step = 0.01,
                      double max_points = 2e6);

// Accelerated projected gradient (FISTA with restarts) over the matroid
// polytope. Reports the certified upper bound pi(x) + gap, where gap is the
// linearization gap at the returned point x.
OracleResult HighPrecisionFopt(const Instance& inst, const Subset& restrict,
                               double rel_tol = 1e-9, int max_iterations = 50000);
OracleResult HighPrecisionFopt(const Instance& inst, double rel_tol = 1e-9);

// Grid for n <= grid_cap, projected gradient for n <= 30, TooLarge beyond.
OracleResult BruteForceFopt(const Instance& inst, double grid_step = 0.01,
                            int grid_cap = 6);

}  // namespace convsec

#endif  // CONVSEC_ORACLE_H_
