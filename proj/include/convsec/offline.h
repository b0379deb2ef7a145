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

// Offline solvers built on a good classifier lambda*: take everything it
// picks (no constraint), or the better of the best filtered feasible set and
// the best single picked item (matroid constraint).

#ifndef CONVSEC_OFFLINE_H_
#define CONVSEC_OFFLINE_H_

#include <functional>
#include <optional>
#include <string>

#include "convsec/classifier.h"
#include "convsec/instance.h"

namespace convsec {

struct SolutionPart {
  Subset set;
  double profit = 0.0;
};

struct OfflineParts {
  SolutionPart x_lin;
  SolutionPart x_occ;
  SolutionPart x_rest;  // x_occ without its threshold item
  SolutionPart x_circ;  // the threshold item of x_occ, if any
  SolutionPart best_singleton;
};

struct OfflineSolution {
  Subset chosen;
  double profit = 0.0;
  OfflineParts parts;
  std::optional<GoodClassifier> classifier;
  // "sweep", "filtered", "singleton" or "none".
  std::string candidate = "none";
  // Whether the filtered candidate came from exhaustive search.
  bool exhaustive = false;
};

struct OfflineOptions {
  double eps = 1e-6;
  int exhaustive_cap = 18;
};

// Free matroid only. Sweeps U_lambda* by decreasing v / <lambda*, s>,
// keeping each item whose marginal profit is non-negative.
OfflineSolution SolveUnconstrained(const Instance& inst,
                                   const OfflineOptions& options = {});

// Best of (a) the max-profit feasible subset of the strictly picked items,
// exhaustive up to exhaustive_cap and greedy on pi+ beyond, and (b) the best
// single picked item with non-negative profit.
OfflineSolution SolveConstrained(const Instance& inst,
                                 const OfflineOptions& options = {});

// argmax of <v, y> - <lambda*, S y> over feasible y within the strictly
// picked items, by matroid greedy.
Subset XLin(const Instance& inst, const Vec& lambda_star);

// pi computed with the gradient-truncated cost g+ (caps lambda*).
class PiPlus {
 public:
  PiPlus(Instance base, Vec lambda_star);

  const Instance& base() const { return base_; }
  const TruncatedCost& truncated() const { return truncated_; }
  double Eval(const Subset& subset) const;

 private:
  Instance base_;
  TruncatedCost truncated_;
};

PiPlus BuildPiPlus(const Instance& inst, const Vec& lambda_star);

// Monotone greedy under the matroid: repeatedly adds the feasible item of
// `universe` with the largest positive gain.
Subset GreedyUnderMatroid(const Instance& inst, const Subset& universe,
                          const std::function<double(const Subset&)>& f);

}  // namespace convsec

#endif  // CONVSEC_OFFLINE_H_
