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

#include "convsec/instance.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "convsec/error.h"
#include "convsec/rng.h"
#include "numeric.h"

namespace convsec {

Instance::Instance(std::vector<Item> items, CostModel cost, Matroid matroid,
                   InstanceMeta meta) {
  const int d = cost.dim();
  std::set<ItemId> seen;
  std::vector<ItemId> ids;
  ids.reserve(items.size());
  for (const Item& e : items) {
    if (!seen.insert(e.id).second) {
      Fail(ErrorCode::kInvalidArgument,
           "duplicate item id " + std::to_string(e.id));
    }
    if (!(e.value >= 0.0) || !std::isfinite(e.value)) {
      Fail(ErrorCode::kInvalidArgument,
           "item " + std::to_string(e.id) + " needs a finite value >= 0");
    }
    if (static_cast<int>(e.size.size()) != d) {
      Fail(ErrorCode::kDimensionMismatch,
           "item " + std::to_string(e.id) + " has size dimension " +
               std::to_string(e.size.size()) + ", cost has " +
               std::to_string(d));
    }
    for (double s : e.size) {
      if (!(s >= 0.0) || !std::isfinite(s)) {
        Fail(ErrorCode::kInvalidArgument,
             "item " + std::to_string(e.id) + " has a negative size");
      }
    }
    ids.push_back(e.id);
  }
  Matroid bound = matroid.WithGround(ids);
  MatroidIndex index(bound, ids);
  data_ = std::make_shared<const Data>(Data{std::move(items), std::move(cost),
                                            std::move(bound), std::move(index),
                                            std::move(meta)});
}

Subset Instance::All() const {
  Subset all(size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

std::optional<std::size_t> Instance::PositionOf(ItemId id) const {
  for (std::size_t p = 0; p < size(); ++p) {
    if (data_->items[p].id == id) return p;
  }
  return std::nullopt;
}

Subset Instance::ToSubset(const std::vector<ItemId>& ids) const {
  Subset subset;
  subset.reserve(ids.size());
  for (ItemId id : ids) {
    auto pos = PositionOf(id);
    if (!pos) Fail(ErrorCode::kUnknownId, "unknown item id " + std::to_string(id));
    subset.push_back(*pos);
  }
  return subset;
}

std::vector<ItemId> Instance::ToIds(const Subset& subset) const {
  std::vector<ItemId> ids;
  ids.reserve(subset.size());
  for (std::size_t p : subset) ids.push_back(data_->items[p].id);
  return ids;
}

Vec Instance::Occupancy(const Subset& subset) const {
  Vec z(dim(), 0.0);
  for (std::size_t p : subset) {
    const Vec& s = data_->items[p].size;
    for (int k = 0; k < dim(); ++k) z[k] += s[k];
  }
  return z;
}

double Instance::Profit(const Vec& x) const {
  if (x.size() != size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "x has length " + std::to_string(x.size()) + ", instance has " +
             std::to_string(size()) + " items");
  }
  Vec z(dim(), 0.0);
  double value = 0.0;
  for (std::size_t p = 0; p < size(); ++p) {
    if (!(x[p] >= 0.0) || x[p] > 1.0 + 1e-12) {
      Fail(ErrorCode::kInvalidArgument, "x must lie in [0, 1]^n");
    }
    if (x[p] == 0.0) continue;
    const Item& e = data_->items[p];
    value += x[p] * e.value;
    for (int k = 0; k < dim(); ++k) z[k] += x[p] * e.size[k];
  }
  return value - data_->cost.Eval(z);
}

double Instance::SubsetProfit(const Subset& subset) const {
  double value = 0.0;
  for (std::size_t p : subset) value += data_->items[p].value;
  return value - data_->cost.Eval(Occupancy(subset));
}

double Instance::SingletonProfit(std::size_t pos) const {
  const Item& e = data_->items[pos];
  return e.value - data_->cost.Eval(e.size);
}

Vec Instance::ProfitGradient(const Vec& x) const {
  Vec z(dim(), 0.0);
  for (std::size_t p = 0; p < size(); ++p) {
    if (x[p] == 0.0) continue;
    for (int k = 0; k < dim(); ++k) z[k] += x[p] * data_->items[p].size[k];
  }
  const Vec g = data_->cost.Grad(z);
  Vec out(size());
  for (std::size_t p = 0; p < size(); ++p) {
    const Item& e = data_->items[p];
    double dot = 0.0;
    for (int k = 0; k < dim(); ++k) dot += g[k] * e.size[k];
    out[p] = e.value - dot;
  }
  return out;
}

Instance Instance::WithItems(std::vector<Item> items) const {
  std::vector<ItemId> ids;
  for (const Item& e : items) ids.push_back(e.id);
  return Instance(std::move(items), data_->cost, data_->matroid.Restrict(ids),
                  data_->meta);
}

Instance Instance::WithCost(CostModel cost) const {
  return Instance(data_->items, std::move(cost), data_->matroid, data_->meta);
}

Instance Instance::WithMeta(InstanceMeta meta) const {
  return Instance(data_->items, data_->cost, data_->matroid, std::move(meta));
}

ExceptionalResult DetectExceptional(const Instance& inst, const Item& item) {
  const CostModel& g = inst.cost();
  Vec z(item.size.size());
  auto phi = [&](double theta) {
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = theta * item.size[k];
    return theta * item.value - g.Eval(z);
  };
  const internal::Maximum best =
      internal::GoldenSectionMax(phi, 0.0, 1.0, 1e-9);
  constexpr double kBoundary = 1e-7;
  ExceptionalResult result;
  result.theta = best.arg;
  result.exceptional = best.arg > kBoundary && best.arg < 1.0 - kBoundary;
  return result;
}

Instance PerturbGeneralPosition(const Instance& inst, double delta,
                                std::uint64_t seed) {
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "delta must lie in [0, 1)");
  }
  Rng rng(seed);
  std::vector<Item> items = inst.items();
  const double n = static_cast<double>(std::max<std::size_t>(items.size(), 1));
  for (std::size_t p = 0; p < items.size(); ++p) {
    const double u = rng.Uniform();
    const double single = std::max(inst.SingletonProfit(p), 0.0);
    items[p].value = std::max(0.0, items[p].value - u * (delta / n) * single);
  }
  InstanceMeta meta = inst.meta();
  meta.general_position = true;
  meta.perturb_seed = seed;
  return Instance(std::move(items), inst.cost(), inst.matroid(),
                  std::move(meta));
}

ExceptionalSplit SplitExceptional(const Instance& inst) {
  std::vector<Item> core;
  std::vector<Item> exceptional;
  for (const Item& e : inst.items()) {
    if (DetectExceptional(inst, e).exceptional) {
      exceptional.push_back(e);
    } else {
      core.push_back(e);
    }
  }
  Instance core_inst = inst.WithItems(std::move(core));
  InstanceMeta meta = core_inst.meta();
  meta.exceptional_free = true;
  return {core_inst.WithMeta(std::move(meta)), std::move(exceptional)};
}

HighProfitSplit DetectHighProfit(const Instance& inst, double eta,
                                 std::optional<double> opt,
                                 const std::string& opt_kind) {
  if (!(eta >= 1.0)) Fail(ErrorCode::kInvalidArgument, "eta must be >= 1");
  HighProfitSplit split;
  if (opt) {
    split.opt_estimate = *opt;
    split.bound_kind = opt_kind;
  } else {
    for (std::size_t p = 0; p < inst.size(); ++p) {
      split.opt_estimate += std::max(inst.SingletonProfit(p), 0.0);
    }
    split.bound_kind = "singleton_sum";
  }
  split.cap = split.opt_estimate / (eta * inst.dim());
  for (std::size_t p = 0; p < inst.size(); ++p) {
    if (inst.SingletonProfit(p) > split.cap) {
      split.high.push_back(inst.item(p).id);
    }
  }
  return split;
}

namespace {

CostModel GenerateCost(const GeneratorConfig& config, Rng& rng) {
  const int d = config.d;
  Vec coeff(d);
  for (int i = 0; i < d; ++i) coeff[i] = rng.Uniform(config.coeff_lo,
                                                     config.coeff_hi);
  if (config.cost_family == "power") {
    return CostModel::SeparablePower(std::move(coeff), Vec(d, config.exponent));
  }
  if (config.cost_family == "exp") {
    return CostModel::SeparableExp(std::move(coeff), Vec(d, config.exp_rate));
  }
  if (config.cost_family == "quadratic") {
    Vec q(d * d, 0.0);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        q[i * d + j] = q[j * d + i] = rng.Uniform(0.0, config.offdiag);
      }
    }
    // Strict diagonal dominance keeps Q positive definite.
    for (int i = 0; i < d; ++i) {
      double row = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j != i) row += q[i * d + j];
      }
      q[i * d + i] = coeff[i] + row;
    }
    return CostModel::SupermodularQuadratic(d, std::move(q));
  }
  if (config.cost_family == "explicit") {
    if (!config.explicit_cost) {
      Fail(ErrorCode::kInvalidArgument, "explicit cost family needs a cost");
    }
    if (config.explicit_cost->dim() != d) {
      Fail(ErrorCode::kDimensionMismatch, "explicit cost dimension mismatch");
    }
    return *config.explicit_cost;
  }
  Fail(ErrorCode::kInvalidArgument,
       "unknown cost family '" + config.cost_family + "'");
}

Matroid GenerateMatroid(const GeneratorConfig& config, Rng& rng) {
  const std::string& kind = config.matroid_kind;
  if (kind == "free") return Matroid::Free();
  if (kind == "uniform") return Matroid::Uniform(config.rank);
  if (kind == "partition") {
    if (config.num_blocks < 1) {
      Fail(ErrorCode::kInvalidArgument, "partition needs num_blocks >= 1");
    }
    std::vector<std::vector<ItemId>> blocks(config.num_blocks);
    for (int p = 0; p < config.n; ++p) {
      blocks[rng.Below(config.num_blocks)].push_back(p);
    }
    return Matroid::Partition(std::move(blocks),
                              std::vector<int>(config.num_blocks,
                                               config.block_cap));
  }
  if (kind == "explicit") {
    if (!config.explicit_matroid) {
      Fail(ErrorCode::kInvalidArgument, "explicit matroid kind needs a matroid");
    }
    return *config.explicit_matroid;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown matroid kind '" + kind + "'");
}

}  // namespace

Instance Generate(const GeneratorConfig& config, std::uint64_t seed) {
  if (config.n < 0 || config.d < 1) {
    Fail(ErrorCode::kInvalidArgument, "generator needs n >= 0 and d >= 1");
  }
  if (!config.fixed_values.empty() &&
      static_cast<int>(config.fixed_values.size()) != config.n) {
    Fail(ErrorCode::kInvalidArgument, "fixed_values must have n entries");
  }
  if (!config.fixed_sizes.empty() &&
      static_cast<int>(config.fixed_sizes.size()) != config.n) {
    Fail(ErrorCode::kInvalidArgument, "fixed_sizes must have n entries");
  }
  if (!(config.value_max >= 0.0) || !(config.size_max >= 0.0) ||
      !(config.coeff_lo > 0.0) || config.coeff_hi < config.coeff_lo) {
    Fail(ErrorCode::kInvalidArgument, "generator ranges are invalid");
  }
  Rng rng(seed);
  std::vector<Item> items(config.n);
  for (int p = 0; p < config.n; ++p) {
    items[p].id = p;
    items[p].value = config.fixed_values.empty()
                         ? rng.Uniform(0.0, config.value_max)
                         : config.fixed_values[p];
  }
  for (int p = 0; p < config.n; ++p) {
    if (config.fixed_sizes.empty()) {
      items[p].size.resize(config.d);
      for (int k = 0; k < config.d; ++k) {
        items[p].size[k] = rng.Uniform(0.0, config.size_max);
      }
    } else {
      items[p].size = config.fixed_sizes[p];
    }
  }
  CostModel cost = GenerateCost(config, rng);
  Matroid matroid = GenerateMatroid(config, rng);
  InstanceMeta meta;
  meta.seed = seed;
  return Instance(std::move(items), std::move(cost), std::move(matroid),
                  std::move(meta));
}

}  // namespace convsec
