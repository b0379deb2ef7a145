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

#include "convsec/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "convsec/error.h"
#include "convsec/fopt.h"

namespace convsec {

std::string BoundKindName(BoundKind kind) {
  switch (kind) {
    case BoundKind::kExact:
      return "exact";
    case BoundKind::kLower:
      return "lower";
    case BoundKind::kUpper:
      return "upper";
  }
  return "unknown";
}

namespace {

// Visits every independent subset of `universe` once, tracking the value sum
// and occupancy incrementally.
class SubsetSearch {
 public:
  SubsetSearch(const Instance& inst, const Subset& universe)
      : inst_(inst), universe_(universe), state_(&inst.index()),
        z_(inst.dim(), 0.0) {}

  OracleResult Run() {
    best_.value = 0.0;
    best_.method = "exhaustive";
    best_.bound_kind = BoundKind::kExact;
    Visit(0, 0.0);
    return best_;
  }

 private:
  void Visit(std::size_t start, double value) {
    for (std::size_t k = start; k < universe_.size(); ++k) {
      const std::size_t p = universe_[k];
      if (!state_.CanAdd(p)) continue;
      const Item& e = inst_.item(p);
      state_.Add(p);
      current_.push_back(p);
      for (int i = 0; i < inst_.dim(); ++i) z_[i] += e.size[i];
      const double v = value + e.value;
      const double profit = v - inst_.cost().Eval(z_);
      if (profit > best_.value) {
        best_.value = profit;
        best_.witness = current_;
      }
      Visit(k + 1, v);
      for (int i = 0; i < inst_.dim(); ++i) z_[i] -= e.size[i];
      current_.pop_back();
      state_.Remove(p);
    }
  }

  const Instance& inst_;
  const Subset& universe_;
  IndependenceState state_;
  Vec z_;
  Subset current_;
  OracleResult best_;
};

// Euclidean projection onto {0 <= x <= 1, x(B) <= cap(B)} with coordinates
// outside `active` pinned to zero.
void Project(const MatroidIndex& index, const std::vector<bool>& active,
             Vec* x) {
  const Vec orig = *x;
  Vec& y = *x;
  for (std::size_t p = 0; p < y.size(); ++p) {
    y[p] = active[p] ? std::clamp(orig[p], 0.0, 1.0) : 0.0;
  }
  for (int b = 0; b < index.num_blocks(); ++b) {
    std::vector<std::size_t> members;
    double sum = 0.0;
    for (std::size_t p = 0; p < y.size(); ++p) {
      if (active[p] && index.block(p) == b) {
        members.push_back(p);
        sum += y[p];
      }
    }
    const double cap = index.cap(b);
    if (sum <= cap) continue;
    // Otherwise the projection is clamp(orig - theta) with the block mass
    // equal to the cap.
    auto mass = [&](double theta) {
      double total = 0.0;
      for (std::size_t p : members) total += std::clamp(orig[p] - theta, 0.0, 1.0);
      return total;
    };
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t p : members) hi = std::max(hi, orig[p]);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (mass(mid) > cap) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    for (std::size_t p : members) y[p] = std::clamp(orig[p] - hi, 0.0, 1.0);
  }
}

// max over the polytope of <w, s>, for the linearization gap.
double LinearMax(const MatroidIndex& index, const std::vector<bool>& active,
                 const Vec& w) {
  double total = 0.0;
  std::vector<std::vector<double>> per_block(index.num_blocks());
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (!active[p] || !(w[p] > 0.0)) continue;
    if (index.block(p) < 0) {
      total += w[p];
    } else {
      per_block[index.block(p)].push_back(w[p]);
    }
  }
  for (int b = 0; b < index.num_blocks(); ++b) {
    auto& v = per_block[b];
    std::sort(v.begin(), v.end(), std::greater<>());
    const std::size_t take = std::min<std::size_t>(v.size(), index.cap(b));
    for (std::size_t k = 0; k < take; ++k) total += v[k];
  }
  return total;
}

}  // namespace

OracleResult BruteForceOpt(const Instance& inst, int cap) {
  if (static_cast<int>(inst.size()) > cap) {
    Fail(ErrorCode::kTooLarge, "exhaustive search is capped at " +
                                   std::to_string(cap) + " items");
  }
  const Subset all = inst.All();
  return SubsetSearch(inst, all).Run();
}

OracleResult BestFilteredFeasible(const Instance& inst, const Subset& universe,
                                  int cap) {
  if (static_cast<int>(universe.size()) > cap) {
    Fail(ErrorCode::kTooLarge, "exhaustive search is capped at " +
                                   std::to_string(cap) + " items");
  }
  return SubsetSearch(inst, universe).Run();
}

OracleResult GridFopt(const Instance& inst, double grid_step,
                      double max_points) {
  const std::size_t n = inst.size();
  OracleResult result;
  result.method = "grid";
  result.bound_kind = BoundKind::kLower;
  result.x.assign(n, 0.0);
  if (n == 0) return result;
  if (!(grid_step > 0.0) || grid_step > 1.0) {
    Fail(ErrorCode::kInvalidArgument, "grid step must lie in (0, 1]");
  }
  int m = static_cast<int>(std::llround(1.0 / grid_step));
  const int m_budget = static_cast<int>(
      std::floor(std::pow(max_points, 1.0 / static_cast<double>(n)))) - 1;
  m = std::max(1, std::min(m, m_budget));
  const double h = 1.0 / m;
  result.resolution = h;

  std::vector<int> k(n, 0);
  Vec x(n, 0.0);
  result.value = 0.0;
  while (true) {
    if (InMatroidPolytope(inst, x, 1e-12)) {
      const double v = inst.Profit(x);
      if (v > result.value) {
        result.value = v;
        result.x = x;
      }
    }
    std::size_t p = 0;
    while (p < n && k[p] == m) {
      k[p] = 0;
      x[p] = 0.0;
      ++p;
    }
    if (p == n) break;
    ++k[p];
    x[p] = std::min(1.0, k[p] * h);
  }
  result.achieved = result.value;
  return result;
}

OracleResult HighPrecisionFopt(const Instance& inst, double rel_tol) {
  return HighPrecisionFopt(inst, inst.All(), rel_tol);
}

OracleResult HighPrecisionFopt(const Instance& inst, const Subset& restrict,
                               double rel_tol, int max_iterations) {
  const std::size_t n = inst.size();
  const MatroidIndex& index = inst.index();
  std::vector<bool> active(n, false);
  for (std::size_t p : restrict) active[p] = true;

  OracleResult result;
  result.method = "projected_gradient_hp";
  result.bound_kind = BoundKind::kUpper;
  result.x.assign(n, 0.0);
  if (restrict.empty()) return result;

  auto objective = [&](const Vec& v) { return inst.Profit(v); };
  auto gap_at = [&](const Vec& v, const Vec& grad) {
    double at = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      if (active[p]) at += grad[p] * v[p];
    }
    return std::max(0.0, LinearMax(index, active, grad) - at);
  };

  Vec x(n, 0.0);
  Vec y = x;
  double fx = objective(x);
  double t = 1.0;
  double lipschitz = 1.0;
  double gap = kInfinity;
  for (int it = 0; it < max_iterations; ++it) {
    const Vec gy = inst.ProfitGradient(y);
    const double fy = objective(y);
    Vec next(n);
    double f_next = 0.0;
    for (int tries = 0; tries < 80; ++tries) {
      for (std::size_t p = 0; p < n; ++p) next[p] = y[p] + gy[p] / lipschitz;
      Project(index, active, &next);
      f_next = objective(next);
      // Ascent form of the sufficient-increase condition.
      double lin = 0.0;
      double sq = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        const double dp = next[p] - y[p];
        lin += gy[p] * dp;
        sq += dp * dp;
      }
      if (f_next >= fy + lin - 0.5 * lipschitz * sq - 1e-15 * std::fabs(fy)) {
        break;
      }
      lipschitz *= 2.0;
    }
    if (f_next < fx) {
      // Adaptive restart: drop momentum and retry from the best point.
      t = 1.0;
      y = x;
      lipschitz = std::max(1e-12, lipschitz);
      if ((it & 63) == 63) {
        gap = gap_at(x, inst.ProfitGradient(x));
        if (gap <= rel_tol * (1.0 + std::fabs(fx))) break;
      }
      continue;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t p = 0; p < n; ++p) {
      y[p] = next[p] + ((t - 1.0) / t_next) * (next[p] - x[p]);
    }
    Project(index, active, &y);
    x = std::move(next);
    fx = f_next;
    t = t_next;
    lipschitz *= 0.9;
    if ((it & 15) == 15) {
      gap = gap_at(x, inst.ProfitGradient(x));
      if (gap <= rel_tol * (1.0 + std::fabs(fx))) break;
    }
  }
  gap = gap_at(x, inst.ProfitGradient(x));
  result.x = x;
  result.achieved = fx;
  result.gap = gap;
  result.value = fx + gap;
  return result;
}

OracleResult BruteForceFopt(const Instance& inst, double grid_step,
                            int grid_cap) {
  if (static_cast<int>(inst.size()) <= grid_cap) {
    return GridFopt(inst, grid_step);
  }
  if (inst.size() > 30) {
    Fail(ErrorCode::kTooLarge, "fractional oracle is capped at 30 items");
  }
  return HighPrecisionFopt(inst);
}

}  // namespace convsec
