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

#include "convsec/fopt.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "convsec/error.h"

namespace convsec {
namespace {

struct Direction {
  Vec dz;
  double dv = 0.0;
};

// Largest gamma in [0, gamma_max] maximizing pi(x + gamma d). The
// directional derivative is non-increasing in gamma, so bisect on its sign.
double LineSearch(const CostModel& cost, const Vec& z, const Direction& dir,
                  double gamma_max) {
  Vec y(z.size());
  auto slope = [&](double gamma) {
    for (std::size_t k = 0; k < z.size(); ++k) {
      y[k] = std::max(0.0, z[k] + gamma * dir.dz[k]);
    }
    const Vec g = cost.Grad(y);
    double s = dir.dv;
    for (std::size_t k = 0; k < z.size(); ++k) s -= g[k] * dir.dz[k];
    return s;
  };
  if (slope(gamma_max) >= 0.0) return gamma_max;
  if (slope(0.0) <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = gamma_max;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (slope(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FractionalSolution Fopt(const Instance& inst, const FoptOptions& options) {
  return Fopt(inst, inst.All(), options);
}

FractionalSolution Fopt(const Instance& inst, const Subset& restrict,
                        const FoptOptions& options) {
  const std::size_t n = inst.size();
  const int d = inst.dim();
  const CostModel& cost = inst.cost();
  for (std::size_t p : restrict) {
    if (p >= n) Fail(ErrorCode::kUnknownId, "restrict names a missing item");
  }
  FractionalSolution sol;
  sol.x.assign(n, 0.0);
  if (restrict.empty()) return sol;

  // Active vertices (independent sets, sorted) and their convex weights.
  std::map<Subset, double> active;
  active[Subset{}] = 1.0;
  Vec z(d, 0.0);
  Vec weight(n, 0.0);
  double value = 0.0;

  auto vertex_dot = [&](const Subset& s, const Vec& w) {
    double total = 0.0;
    for (std::size_t p : s) total += w[p];
    return total;
  };

  for (int t = 0;; ++t) {
    const Vec g = cost.Grad(z);
    for (std::size_t p : restrict) {
      const Item& e = inst.item(p);
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += g[k] * e.size[k];
      weight[p] = e.value - dot;
    }
    Subset s = inst.index().Greedy(restrict, weight);
    std::sort(s.begin(), s.end());
    double at_x = 0.0;
    for (std::size_t p : restrict) at_x += weight[p] * sol.x[p];
    const double fw_gap = std::max(0.0, vertex_dot(s, weight) - at_x);
    sol.gap = fw_gap;
    sol.iterations = t;
    if (fw_gap <= options.rel_tol * (1.0 + std::fabs(value))) break;
    if (t >= options.max_iterations) {
      sol.converged = false;
      break;
    }

    auto away = active.end();
    double away_dot = 0.0;
    for (auto it = active.begin(); it != active.end(); ++it) {
      const double v = vertex_dot(it->first, weight);
      if (away == active.end() || v < away_dot) {
        away = it;
        away_dot = v;
      }
    }
    const double away_gap = at_x - away_dot;

    Direction dir;
    dir.dz.assign(d, 0.0);
    double gamma_max = 1.0;
    const bool forward = fw_gap >= away_gap || active.size() == 1;
    const Subset& target = forward ? s : away->first;
    {
      const Vec occ = inst.Occupancy(target);
      double target_value = 0.0;
      for (std::size_t p : target) target_value += inst.item(p).value;
      double x_value = 0.0;
      for (std::size_t p : restrict) x_value += inst.item(p).value * sol.x[p];
      const double sign = forward ? 1.0 : -1.0;
      for (int k = 0; k < d; ++k) dir.dz[k] = sign * (occ[k] - z[k]);
      dir.dv = sign * (target_value - x_value);
    }
    if (!forward) {
      const double a = away->second;
      gamma_max = a / (1.0 - a);
    }
    const double gamma = LineSearch(cost, z, dir, gamma_max);
    if (gamma <= 0.0) {
      // No progress possible along the chosen direction at double precision.
      sol.converged = false;
      break;
    }

    if (forward) {
      for (std::size_t p : restrict) sol.x[p] *= (1.0 - gamma);
      for (std::size_t p : s) sol.x[p] += gamma;
      for (auto& [v, w] : active) w *= (1.0 - gamma);
      active[s] += gamma;
      if (gamma >= 1.0) {
        active.clear();
        active[s] = 1.0;
      }
    } else {
      const Subset a_set = away->first;
      for (std::size_t p : restrict) sol.x[p] *= (1.0 + gamma);
      for (std::size_t p : a_set) sol.x[p] -= gamma;
      for (auto& [v, w] : active) w *= (1.0 + gamma);
      active[a_set] -= gamma;
      if (gamma >= gamma_max) active.erase(a_set);
    }
    for (auto it = active.begin(); it != active.end();) {
      it = it->second <= 1e-15 ? active.erase(it) : std::next(it);
    }
    for (std::size_t p : restrict) {
      sol.x[p] = std::clamp(sol.x[p], 0.0, 1.0);
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t p : restrict) {
      if (sol.x[p] == 0.0) continue;
      const Vec& sz = inst.item(p).size;
      for (int k = 0; k < d; ++k) z[k] += sol.x[p] * sz[k];
    }
    value = inst.Profit(sol.x);
  }
  sol.value = inst.Profit(sol.x);
  return sol;
}

bool InMatroidPolytope(const Instance& inst, const Vec& x, double tol) {
  if (x.size() != inst.size()) return false;
  const MatroidIndex& index = inst.index();
  std::vector<double> used(index.num_blocks(), 0.0);
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x[p] < -tol || x[p] > 1.0 + tol) return false;
    if (index.block(p) >= 0) used[index.block(p)] += x[p];
  }
  for (int b = 0; b < index.num_blocks(); ++b) {
    if (used[b] > index.cap(b) + tol) return false;
  }
  return true;
}

}  // namespace convsec
