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

// Reference computations for tests. These deliberately avoid the library's
// solvers: maxima come from grids and enumeration, derivatives from finite
// differences, and independence from the matroid's definition.

#ifndef CONVSEC_TESTS_SUPPORT_TEST_ORACLES_H_
#define CONVSEC_TESTS_SUPPORT_TEST_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "convsec/cost.h"
#include "convsec/instance.h"
#include "convsec/matroid.h"

namespace convsec::testing {

struct GridMax {
  double arg = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

// Maximum of f over lo, lo + step, ..., hi.
inline GridMax GridMax1D(const std::function<double(double)>& f, double lo,
                         double hi, double step) {
  GridMax best;
  const long steps = std::lround((hi - lo) / step);
  for (long k = 0; k <= steps; ++k) {
    const double t = lo + step * static_cast<double>(k);
    const double v = f(t);
    if (v > best.value) best = {t, v};
  }
  return best;
}

// sup_{t in [0, hi]} lam * t - f(t) on a grid.
inline double GridConjugate1D(const std::function<double(double)>& f,
                              double lam, double hi, double step) {
  return GridMax1D([&](double t) { return lam * t - f(t); }, 0.0, hi, step)
      .value;
}

inline double CentralDifference(const std::function<double(const Vec&)>& f,
                                Vec z, int i, double h) {
  z[i] += h;
  const double up = f(z);
  z[i] -= 2.0 * h;
  const double down = f(z);
  return (up - down) / (2.0 * h);
}

inline std::vector<std::size_t> MaskToPositions(std::uint64_t mask,
                                                const std::vector<std::size_t>& universe) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (mask & (std::uint64_t{1} << k)) out.push_back(universe[k]);
  }
  return out;
}

// Independence straight from the definition of each kind.
inline bool IndependentByDefinition(const Matroid& m,
                                    const std::vector<ItemId>& ids) {
  switch (m.kind()) {
    case MatroidKind::kFree:
      return true;
    case MatroidKind::kUniform:
      return static_cast<int>(ids.size()) <= m.uniform_rank();
    case MatroidKind::kPartition: {
      for (std::size_t b = 0; b < m.blocks().size(); ++b) {
        int count = 0;
        for (ItemId id : ids) {
          count += std::count(m.blocks()[b].begin(), m.blocks()[b].end(), id)
                       ? 1
                       : 0;
        }
        if (count > m.caps()[b]) return false;
      }
      return true;
    }
  }
  return false;
}

inline std::vector<ItemId> IdsOf(const Instance& inst,
                                 const std::vector<std::size_t>& positions) {
  std::vector<ItemId> ids;
  for (std::size_t p : positions) ids.push_back(inst.item(p).id);
  return ids;
}

// v(A) - g(sum of sizes), accumulated here rather than by Instance.
inline double ProfitByDefinition(const Instance& inst,
                                 const std::vector<std::size_t>& positions) {
  Vec z(inst.dim(), 0.0);
  double value = 0.0;
  for (std::size_t p : positions) {
    value += inst.item(p).value;
    for (int i = 0; i < inst.dim(); ++i) z[i] += inst.item(p).size[i];
  }
  return value - inst.cost().Eval(z);
}

struct Enumerated {
  double value = 0.0;
  std::vector<std::size_t> witness;
};

// Max profit over independent subsets of `universe`, by enumeration.
inline Enumerated EnumerateBest(const Instance& inst,
                                const std::vector<std::size_t>& universe) {
  Enumerated best;
  const std::uint64_t total = std::uint64_t{1} << universe.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto s = MaskToPositions(mask, universe);
    if (!IndependentByDefinition(inst.matroid(), IdsOf(inst, s))) continue;
    const double v = ProfitByDefinition(inst, s);
    if (v > best.value) best = {v, s};
  }
  return best;
}

inline Enumerated EnumerateBest(const Instance& inst) {
  std::vector<std::size_t> all(inst.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return EnumerateBest(inst, all);
}

// Max of pi over x in {0, step, ..., 1}^n subject to the matroid's
// capacity constraints on block sums. A lower bound on fopt. n <= 4.
inline double GridFractionalMax(const Instance& inst, double step) {
  const std::size_t n = inst.size();
  const long per = std::lround(1.0 / step);
  std::vector<long> k(n, 0);
  double best = 0.0;
  while (true) {
    Vec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<double>(k[j]) / per;
    bool ok = true;
    const Matroid& m = inst.matroid();
    if (m.kind() == MatroidKind::kUniform) {
      double sum = 0.0;
      for (double v : x) sum += v;
      ok = sum <= m.uniform_rank() + 1e-12;
    } else if (m.kind() == MatroidKind::kPartition) {
      for (std::size_t b = 0; b < m.blocks().size() && ok; ++b) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const ItemId id = inst.item(j).id;
          if (std::count(m.blocks()[b].begin(), m.blocks()[b].end(), id)) {
            sum += x[j];
          }
        }
        ok = sum <= m.caps()[b] + 1e-12;
      }
    }
    if (ok) {
      Vec z(inst.dim(), 0.0);
      double value = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        value += x[j] * inst.item(j).value;
        for (int i = 0; i < inst.dim(); ++i) z[i] += x[j] * inst.item(j).size[i];
      }
      best = std::max(best, value - inst.cost().Eval(z));
    }
    std::size_t j = 0;
    while (j < n && k[j] == per) k[j++] = 0;
    if (j == n) break;
    ++k[j];
  }
  return best;
}

inline std::vector<Item> MakeItems(const std::vector<double>& values,
                                   const std::vector<Vec>& sizes) {
  std::vector<Item> items;
  for (std::size_t k = 0; k < values.size(); ++k) {
    items.push_back({static_cast<ItemId>(k), values[k], sizes[k]});
  }
  return items;
}

// d = 1, g(z) = z^2, items (3,1), (2,1), (1,1) with ids 0, 1, 2.
inline Instance CanonicalInstance(Matroid matroid = Matroid::Free()) {
  return Instance(MakeItems({3.0, 2.0, 1.0}, {{1.0}, {1.0}, {1.0}}),
                  CostModel::SeparablePower({1.0}, {2.0}), std::move(matroid));
}

inline CostModel Square() { return CostModel::SeparablePower({1.0}, {2.0}); }

inline CostModel CoupledQuadratic() {
  return CostModel::SupermodularQuadratic(2, {1.0, 0.5, 0.5, 1.0});
}

}  // namespace convsec::testing

#endif  // CONVSEC_TESTS_SUPPORT_TEST_ORACLES_H_
