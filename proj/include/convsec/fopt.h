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

// Maximization of the concave profit over the matroid polytope restricted to
// a subset of the items (the fractional optimum fopt).

#ifndef CONVSEC_FOPT_H_
#define CONVSEC_FOPT_H_

#include "convsec/instance.h"

namespace convsec {

struct FractionalSolution {
  Vec x;
  double value = 0.0;
  // Frank-Wolfe duality gap at x. The true maximum lies in
  // [value, value + gap].
  double gap = 0.0;
  int iterations = 0;
  bool converged = true;

  double UpperBound() const { return value + gap; }
};

struct FoptOptions {
  // Stop once gap <= rel_tol * (1 + |value|).
  double rel_tol = 1e-6;
  int max_iterations = 10000;
};

// Frank-Wolfe with away steps and exact line search; the linear oracle is
// the matroid greedy on the profit gradient.
FractionalSolution Fopt(const Instance& inst, const Subset& restrict,
                        const FoptOptions& options = {});
FractionalSolution Fopt(const Instance& inst, const FoptOptions& options = {});

// 0 <= x <= 1 and every block sum within its capacity, up to tol.
bool InMatroidPolytope(const Instance& inst, const Vec& x, double tol = 1e-9);

}  // namespace convsec

#endif  // CONVSEC_FOPT_H_
