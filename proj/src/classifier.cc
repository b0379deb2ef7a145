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

#include "convsec/classifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "convsec/error.h"
#include "numeric.h"

namespace convsec {

Classifier CurvePoint(const CostModel& cost, double tau) {
  if (!(tau >= -1.0)) {
    Fail(ErrorCode::kInvalidArgument, "curve parameter must be >= -1");
  }
  Classifier c;
  c.tau = tau;
  c.lambda.resize(cost.dim());
  if (tau < 0.0) {
    const Vec corner = cost.BoxCorner();
    for (int i = 0; i < cost.dim(); ++i) c.lambda[i] = (1.0 + tau) * corner[i];
  } else {
    for (int i = 0; i < cost.dim(); ++i) {
      c.lambda[i] = cost.MarginalConjugateInverse(i, tau);
    }
  }
  return c;
}

Classifier SentinelClassifier(int dim) {
  Classifier c;
  c.lambda.assign(dim, kInfinity);
  c.tau = kInfinity;
  c.on_curve = false;
  c.sentinel = true;
  return c;
}

double CurveParameterForCoordinate(const CostModel& cost, int i, double g) {
  const double corner = cost.BoxCorner()[i];
  if (g >= corner) return cost.MarginalConjugate(i, g);
  return g / corner - 1.0;
}

double ThresholdOf(const Vec& lambda, const Vec& size) {
  double t = 0.0;
  for (std::size_t k = 0; k < size.size(); ++k) {
    if (size[k] > 0.0) t += lambda[k] * size[k];
  }
  return t;
}

Side CompareToThreshold(double value, double threshold) {
  if (std::isinf(threshold) || std::isinf(value)) {
    if (value == threshold) return Side::kTie;
    return value > threshold ? Side::kAbove : Side::kBelow;
  }
  const double band =
      1e-12 * std::max(std::fabs(value), std::fabs(threshold));
  if (std::fabs(value - threshold) <= band) return Side::kTie;
  return value > threshold ? Side::kAbove : Side::kBelow;
}

double ItemBreakpoint(const CostModel& cost, const Item& item) {
  const bool zero_size = std::all_of(item.size.begin(), item.size.end(),
                                     [](double s) { return s == 0.0; });
  if (zero_size) return kInfinity;
  const double at_corner = ThresholdOf(cost.BoxCorner(), item.size);
  if (item.value < at_corner) return item.value / at_corner - 1.0;
  auto above = [&](double tau) {
    return ThresholdOf(CurvePoint(cost, tau).lambda, item.size) > item.value;
  };
  double hi = 0.0;
  if (!internal::ExpandBracket(above, 1.0, &hi)) {
    Fail(ErrorCode::kCurveRangeExceeded,
         "item " + std::to_string(item.id) + " has no finite breakpoint");
  }
  double lo = 0.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    if (above(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

PickReport Pick(const Instance& inst, const Vec& lambda) {
  if (static_cast<int>(lambda.size()) != inst.dim()) {
    Fail(ErrorCode::kDimensionMismatch, "lambda has the wrong dimension");
  }
  PickReport report;
  report.occupancy.assign(inst.dim(), 0.0);
  for (std::size_t p = 0; p < inst.size(); ++p) {
    const Item& e = inst.item(p);
    const Side side = CompareToThreshold(e.value, ThresholdOf(lambda, e.size));
    if (side == Side::kBelow) continue;
    report.picked.push_back(p);
    for (int k = 0; k < inst.dim(); ++k) report.occupancy[k] += e.size[k];
    if (side == Side::kAbove) {
      report.open_picked.push_back(p);
      continue;
    }
    if (!report.threshold_item) {
      report.threshold_item = p;
    } else {
      report.multiple_ties = true;
      if (e.id < inst.item(*report.threshold_item).id) {
        report.threshold_item = p;
      }
    }
  }
  return report;
}

Subset MaxOccupancySubset(const Instance& inst, const Subset& universe,
                          int i) {
  if (inst.index().is_free()) return universe;
  std::vector<double> weight(inst.size(), 0.0);
  for (std::size_t p : universe) weight[p] = inst.item(p).size[i];
  return inst.index().Greedy(universe, weight);
}

namespace {

// Largest gradient coordinates reachable by feasible subsets of a universe.
struct Reach {
  // lower[i] is attained by witness[i]; upper[i] bounds every feasible set.
  Vec lower;
  Vec upper;
  std::vector<Subset> witness;
};

Reach ComputeReach(const Instance& inst, const Subset& universe) {
  const int d = inst.dim();
  const CostModel& cost = inst.cost();
  Reach r;
  r.lower.assign(d, 0.0);
  r.upper.assign(d, 0.0);
  r.witness.assign(d, Subset{});
  if (inst.index().is_free()) {
    const Vec g = cost.Grad(inst.Occupancy(universe));
    r.lower = g;
    r.upper = g;
    r.witness.assign(d, universe);
    return r;
  }
  std::vector<Subset> per_coord(d);
  Vec zbar(d, 0.0);
  for (int j = 0; j < d; ++j) {
    per_coord[j] = MaxOccupancySubset(inst, universe, j);
    zbar[j] = inst.Occupancy(per_coord[j])[j];
  }
  // By supermodularity the gradient is monotone, so the component-wise
  // maximal occupancy bounds every feasible set.
  r.upper = cost.Grad(zbar);
  if (cost.separable()) {
    r.lower = r.upper;
    r.witness = per_coord;
    return r;
  }
  std::vector<Vec> grads(d);
  for (int j = 0; j < d; ++j) grads[j] = cost.Grad(inst.Occupancy(per_coord[j]));
  for (int i = 0; i < d; ++i) {
    int best = 0;
    for (int j = 1; j < d; ++j) {
      if (grads[j][i] > grads[best][i]) best = j;
    }
    r.lower[i] = grads[best][i];
    r.witness[i] = per_coord[best];
  }
  return r;
}

struct Crossing {
  double tau = -1.0;
  int coord = 0;
};

// Largest tau at which some reachable gradient coordinate meets lambda(tau).
Crossing CrossingOf(const CostModel& cost, const Vec& gradient) {
  Crossing c;
  c.tau = -kInfinity;
  for (int i = 0; i < cost.dim(); ++i) {
    const double tau = CurveParameterForCoordinate(cost, i, gradient[i]);
    if (tau > c.tau) {
      c.tau = tau;
      c.coord = i;
    }
  }
  c.tau = std::max(c.tau, -1.0);
  return c;
}

bool Exceeds(double a, double b) {
  return a > b + 1e-12 * std::max(1.0, std::fabs(b));
}

double BalanceSpread(const CostModel& cost, const Vec& lambda) {
  double lo = kInfinity;
  double hi = -kInfinity;
  for (int i = 0; i < cost.dim(); ++i) {
    const double t = cost.MarginalConjugate(i, lambda[i]);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

}  // namespace

GoodClassifier FindGoodClassifier(const Instance& inst,
                                  const ClassifierOptions& options) {
  const CostModel& cost = inst.cost();
  const int d = inst.dim();
  const bool any_value = std::any_of(
      inst.items().begin(), inst.items().end(),
      [](const Item& e) { return e.value > 0.0; });
  if (!any_value) {
    Fail(ErrorCode::kNoGoodClassifier, "no item has a positive value");
  }

  // Items ordered by breakpoint, largest first; equal breakpoints form one
  // group that enters the picked set together.
  std::vector<double> breakpoint(inst.size());
  Subset always;
  Subset order;
  for (std::size_t p = 0; p < inst.size(); ++p) {
    breakpoint[p] = ItemBreakpoint(cost, inst.item(p));
    if (std::isinf(breakpoint[p])) {
      always.push_back(p);
    } else {
      order.push_back(p);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return breakpoint[a] > breakpoint[b];
  });

  GoodClassifier result;
  Subset current = always;
  auto finish = [&](Classifier c, const Subset& witness, int coord,
                    bool at_breakpoint) {
    const PickReport pick = Pick(inst, c.lambda);
    result.classifier = std::move(c);
    result.x_occ = witness;
    std::sort(result.x_occ.begin(), result.x_occ.end());
    result.i_star = coord;
    result.at_breakpoint = at_breakpoint;
    result.threshold_item = pick.threshold_item;
    const Reach open = ComputeReach(inst, pick.open_picked);
    result.p1_holds = true;
    for (int i = 0; i < d; ++i) {
      const double lam = result.classifier.lambda[i];
      if (open.upper[i] > lam + options.gradient_tol * std::max(1.0, lam)) {
        result.p1_holds = false;
      }
    }
    result.balance_spread = BalanceSpread(cost, result.classifier.lambda);
    return result;
  };

  std::size_t k = 0;
  while (k < order.size()) {
    const double tau_k = breakpoint[order[k]];
    std::size_t end = k;
    while (end < order.size() &&
           std::fabs(breakpoint[order[end]] - tau_k) <=
               1e-12 * std::max(1.0, std::fabs(tau_k))) {
      ++end;
    }
    // Between breakpoints the picked set is `current`: the search stops as
    // soon as the reachable gradient meets the curve.
    const Reach before = ComputeReach(inst, current);
    const Crossing cross = CrossingOf(cost, before.lower);
    if (Exceeds(cross.tau, tau_k)) {
      return finish(CurvePoint(cost, cross.tau), before.witness[cross.coord],
                    cross.coord, false);
    }
    // At the breakpoint the group is picked but not strictly.
    Subset with_group = current;
    for (std::size_t j = k; j < end; ++j) with_group.push_back(order[j]);
    Classifier at = CurvePoint(cost, tau_k);
    const Item& lead = inst.item(order[k]);
    const double t = ThresholdOf(at.lambda, lead.size);
    if (t > 0.0 && lead.value > 0.0) {
      const double scale = lead.value / t;
      for (double& l : at.lambda) l *= scale;
      at.on_curve = std::fabs(scale - 1.0) <= 1e-9;
    }
    const Reach after = ComputeReach(inst, with_group);
    for (int i = 0; i < d; ++i) {
      const double lam = at.lambda[i];
      if (after.lower[i] >= lam - options.gradient_tol * std::max(1.0, lam)) {
        return finish(std::move(at), after.witness[i], i, true);
      }
    }
    current = std::move(with_group);
    k = end;
  }
  const Reach all = ComputeReach(inst, current);
  const Crossing cross = CrossingOf(cost, all.lower);
  return finish(CurvePoint(cost, cross.tau), all.witness[cross.coord],
                cross.coord, false);
}

}  // namespace convsec
