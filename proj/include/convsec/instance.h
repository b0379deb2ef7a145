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

// Items, instances and the profit pi(x) = <v, x> - g(Sx), plus the
// generators and the preprocessing that removes exceptional items and puts
// values in general position.

#ifndef CONVSEC_INSTANCE_H_
#define CONVSEC_INSTANCE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "convsec/cost.h"
#include "convsec/matroid.h"

namespace convsec {

struct Item {
  ItemId id = 0;
  double value = 0.0;
  Vec size;
};

struct InstanceMeta {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> perturb_seed;
  bool exceptional_free = false;
  bool general_position = false;
  // Which estimate of opt the high-profit cap was measured against, if any.
  std::string opt_bound_kind;
};

class Instance {
 public:
  Instance(std::vector<Item> items, CostModel cost, Matroid matroid,
           InstanceMeta meta = {});

  int dim() const { return data_->cost.dim(); }
  std::size_t size() const { return data_->items.size(); }
  bool empty() const { return data_->items.empty(); }
  const std::vector<Item>& items() const { return data_->items; }
  const Item& item(std::size_t pos) const { return data_->items[pos]; }
  const CostModel& cost() const { return data_->cost; }
  const Matroid& matroid() const { return data_->matroid; }
  const MatroidIndex& index() const { return data_->index; }
  const InstanceMeta& meta() const { return data_->meta; }

  Subset All() const;
  std::optional<std::size_t> PositionOf(ItemId id) const;
  Subset ToSubset(const std::vector<ItemId>& ids) const;
  std::vector<ItemId> ToIds(const Subset& subset) const;

  // Sx for a subset.
  Vec Occupancy(const Subset& subset) const;
  // pi(x) for fractional x in [0,1]^n.
  double Profit(const Vec& x) const;
  double SubsetProfit(const Subset& subset) const;
  double SingletonProfit(std::size_t pos) const;
  // v - S^T grad g(Sx).
  Vec ProfitGradient(const Vec& x) const;

  // Same cost; matroid restricted to the surviving ids.
  Instance WithItems(std::vector<Item> items) const;
  Instance WithCost(CostModel cost) const;
  Instance WithMeta(InstanceMeta meta) const;

 private:
  struct Data {
    std::vector<Item> items;
    CostModel cost;
    Matroid matroid;
    MatroidIndex index;
    InstanceMeta meta;
  };
  std::shared_ptr<const Data> data_;
};

struct PreprocessConfig {
  double eta = 10.0;
  double noise_delta = 1e-6;
  double secretary_prob = 0.5;
};

struct ExceptionalResult {
  bool exceptional = false;
  double theta = 0.0;
};

// Maximizes theta -> theta v - g(theta s) on [0, 1]; exceptional iff the
// maximizer is interior (away from the ends by more than 1e-7).
ExceptionalResult DetectExceptional(const Instance& inst, const Item& item);

// v(e) -= u (delta / n) max(pi({e}), 0) with u ~ U[0,1] per item.
Instance PerturbGeneralPosition(const Instance& inst, double delta,
                                std::uint64_t seed);

struct ExceptionalSplit {
  Instance core;
  std::vector<Item> exceptional;
};

ExceptionalSplit SplitExceptional(const Instance& inst);

struct HighProfitSplit {
  double cap = 0.0;  // M = opt_estimate / (eta d)
  double opt_estimate = 0.0;
  std::string bound_kind;
  std::vector<ItemId> high;
};

// Items with pi({e}) > M. When `opt` is absent the estimate is
// sum_e max(pi({e}), 0), a crude upper bound on opt.
HighProfitSplit DetectHighProfit(const Instance& inst, double eta,
                                 std::optional<double> opt = std::nullopt,
                                 const std::string& opt_kind = "opt");

struct GeneratorConfig {
  int n = 10;
  int d = 1;
  // Values: fixed if non-empty, else Uniform(0, value_max).
  Vec fixed_values;
  double value_max = 1.0;
  // Sizes: fixed if non-empty, else Uniform(0, size_max)^d.
  std::vector<Vec> fixed_sizes;
  double size_max = 1.0;
  // "power", "quadratic", "exp" or "explicit".
  std::string cost_family = "power";
  double coeff_lo = 1.0;
  double coeff_hi = 1.0;
  double exponent = 2.0;
  // Off-diagonal entries of random quadratic costs are Uniform(0, offdiag).
  double offdiag = 0.5;
  double exp_rate = 1.0;
  std::optional<CostModel> explicit_cost;
  // "free", "uniform", "partition" or "explicit".
  std::string matroid_kind = "free";
  int rank = 1;
  int num_blocks = 1;
  int block_cap = 1;
  std::optional<Matroid> explicit_matroid;
};

Instance Generate(const GeneratorConfig& config, std::uint64_t seed);

}  // namespace convsec

#endif  // CONVSEC_INSTANCE_H_
