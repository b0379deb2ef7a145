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

#include "convsec/offline.h"

#include <algorithm>
#include <functional>
#include <utility>

#include "convsec/error.h"
#include "convsec/oracle.h"

namespace convsec {
namespace {

SolutionPart MakePart(const Instance& inst, Subset set) {
  std::sort(set.begin(), set.end());
  SolutionPart part;
  part.profit = inst.SubsetProfit(set);
  part.set = std::move(set);
  return part;
}

void FillParts(const Instance& inst, const GoodClassifier& gc,
               const PickReport& pick, OfflineParts* parts) {
  parts->x_lin = MakePart(inst, XLin(inst, gc.classifier.lambda));
  parts->x_occ = MakePart(inst, gc.x_occ);
  Subset rest;
  Subset circ;
  for (std::size_t p : gc.x_occ) {
    const bool strict = std::binary_search(pick.open_picked.begin(),
                                           pick.open_picked.end(), p);
    (strict ? rest : circ).push_back(p);
  }
  parts->x_rest = MakePart(inst, std::move(rest));
  parts->x_circ = MakePart(inst, std::move(circ));
  std::optional<std::size_t> best;
  for (std::size_t p : pick.picked) {
    const double v = inst.SingletonProfit(p);
    if (v >= 0.0 && (!best || v > inst.SingletonProfit(*best))) best = p;
  }
  parts->best_singleton =
      best ? MakePart(inst, Subset{*best}) : SolutionPart{};
}

}  // namespace

Subset XLin(const Instance& inst, const Vec& lambda_star) {
  const PickReport pick = Pick(inst, lambda_star);
  std::vector<double> weight(inst.size(), 0.0);
  for (std::size_t p : pick.open_picked) {
    const Item& e = inst.item(p);
    weight[p] = e.value - ThresholdOf(lambda_star, e.size);
  }
  Subset chosen = inst.index().Greedy(pick.open_picked, weight);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

OfflineSolution SolveUnconstrained(const Instance& inst,
                                   const OfflineOptions& options) {
  if (inst.matroid().kind() != MatroidKind::kFree) {
    Fail(ErrorCode::kInvalidArgument,
         "the unconstrained solver needs a free matroid");
  }
  OfflineSolution sol;
  ClassifierOptions copts;
  copts.eps = options.eps;
  GoodClassifier gc;
  try {
    gc = FindGoodClassifier(inst, copts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoGoodClassifier) throw;
    return sol;
  }
  const Vec& lambda = gc.classifier.lambda;
  const PickReport pick = Pick(inst, lambda);
  Subset order = pick.picked;
  auto density = [&](std::size_t p) {
    const double t = ThresholdOf(lambda, inst.item(p).size);
    return t > 0.0 ? inst.item(p).value / t : kInfinity;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return density(a) > density(b);
                   });
  Subset chosen;
  double current = 0.0;
  for (std::size_t p : order) {
    chosen.push_back(p);
    const double with = inst.SubsetProfit(chosen);
    if (with >= current) {
      current = with;
    } else {
      chosen.pop_back();
    }
  }
  std::sort(chosen.begin(), chosen.end());
  sol.chosen = std::move(chosen);
  sol.profit = inst.SubsetProfit(sol.chosen);
  sol.candidate = "sweep";
  FillParts(inst, gc, pick, &sol.parts);
  sol.classifier = std::move(gc);
  return sol;
}

Subset GreedyUnderMatroid(const Instance& inst, const Subset& universe,
                          const std::function<double(const Subset&)>& f) {
  Subset chosen;
  IndependenceState state(&inst.index());
  std::vector<bool> used(inst.size(), false);
  double current = f(chosen);
  while (true) {
    std::optional<std::size_t> best;
    double best_gain = 0.0;
    for (std::size_t p : universe) {
      if (used[p] || !state.CanAdd(p)) continue;
      chosen.push_back(p);
      const double gain = f(chosen) - current;
      chosen.pop_back();
      if (gain > best_gain) {
        best_gain = gain;
        best = p;
      }
    }
    if (!best) break;
    chosen.push_back(*best);
    used[*best] = true;
    state.Add(*best);
    current += best_gain;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

OfflineSolution SolveConstrained(const Instance& inst,
                                 const OfflineOptions& options) {
  OfflineSolution sol;
  ClassifierOptions copts;
  copts.eps = options.eps;
  GoodClassifier gc;
  try {
    gc = FindGoodClassifier(inst, copts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoGoodClassifier) throw;
    return sol;
  }
  const Vec& lambda = gc.classifier.lambda;
  const PickReport pick = Pick(inst, lambda);
  FillParts(inst, gc, pick, &sol.parts);

  // Candidate (a).
  Subset filtered;
  if (static_cast<int>(pick.open_picked.size()) <= options.exhaustive_cap) {
    filtered = BestFilteredFeasible(inst, pick.open_picked,
                                    options.exhaustive_cap).witness;
    sol.exhaustive = true;
  } else if (inst.cost().separable()) {
    const PiPlus pi_plus = BuildPiPlus(inst, lambda);
    filtered = GreedyUnderMatroid(inst, pick.open_picked, [&](const Subset& s) {
      return pi_plus.Eval(s);
    });
  } else {
    filtered = GreedyUnderMatroid(inst, pick.open_picked, [&](const Subset& s) {
      return inst.SubsetProfit(s);
    });
  }
  std::sort(filtered.begin(), filtered.end());
  const double filtered_profit = inst.SubsetProfit(filtered);
  // Candidate (b).
  const SolutionPart& single = sol.parts.best_singleton;
  if (filtered_profit >= single.profit) {
    sol.chosen = std::move(filtered);
    sol.candidate = "filtered";
  } else {
    sol.chosen = single.set;
    sol.candidate = "singleton";
  }
  sol.profit = inst.SubsetProfit(sol.chosen);
  if (sol.profit < 0.0) {
    sol.chosen.clear();
    sol.profit = 0.0;
    sol.candidate = "none";
  }
  sol.classifier = std::move(gc);
  return sol;
}

PiPlus::PiPlus(Instance base, Vec lambda_star)
    : base_(std::move(base)),
      truncated_(base_.cost(), std::move(lambda_star)) {}

double PiPlus::Eval(const Subset& subset) const {
  double value = 0.0;
  for (std::size_t p : subset) value += base_.item(p).value;
  return value - truncated_.Eval(base_.Occupancy(subset));
}

PiPlus BuildPiPlus(const Instance& inst, const Vec& lambda_star) {
  return PiPlus(inst, lambda_star);
}

}  // namespace convsec
