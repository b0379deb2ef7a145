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

// Free, uniform and partition matroids. A Matroid describes the constraint
// in terms of item ids; MatroidIndex is the same constraint bound to the
// positions of a concrete item list, which is what the solvers use.

#ifndef CONVSEC_MATROID_H_
#define CONVSEC_MATROID_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace convsec {

using ItemId = std::int64_t;
// Positions into an item list.
using Subset = std::vector<std::size_t>;

enum class MatroidKind { kFree, kUniform, kPartition };

std::string MatroidKindName(MatroidKind kind);

class Matroid {
 public:
  static Matroid Free();
  static Matroid Uniform(int rank);
  // Blocks must be disjoint; caps[b] >= 0 bounds |A ∩ blocks[b]|.
  static Matroid Partition(std::vector<std::vector<ItemId>> blocks,
                           std::vector<int> caps);

  MatroidKind kind() const { return kind_; }
  int uniform_rank() const { return rank_; }
  const std::vector<std::vector<ItemId>>& blocks() const { return blocks_; }
  const std::vector<int>& caps() const { return caps_; }

  // Fixes the ground set. Partition blocks must cover it exactly.
  Matroid WithGround(std::vector<ItemId> ground) const;
  const std::vector<ItemId>& ground() const { return ground_; }

  bool IsIndependent(const std::vector<ItemId>& ids) const;
  // Greedy over ids with positive weight, heaviest first, ties by smaller id.
  std::vector<ItemId> GreedyMaxWeight(const std::vector<ItemId>& ids,
                                      const std::vector<double>& weights) const;
  int Rank() const;
  // Restriction to the ids present in `keep`.
  Matroid Restrict(const std::vector<ItemId>& keep) const;

 private:
  Matroid() = default;
  int BlockOf(ItemId id) const;

  MatroidKind kind_ = MatroidKind::kFree;
  int rank_ = 0;
  std::vector<std::vector<ItemId>> blocks_;
  std::vector<int> caps_;
  std::vector<ItemId> ground_;
  std::map<ItemId, int> block_of_;
  bool has_ground_ = false;
};

// Position-bound form. Every position belongs to at most one capacity block;
// positions without a block are unconstrained.
class MatroidIndex {
 public:
  MatroidIndex() = default;
  MatroidIndex(const Matroid& matroid, const std::vector<ItemId>& ids);

  std::size_t size() const { return block_.size(); }
  int num_blocks() const { return static_cast<int>(caps_.size()); }
  int block(std::size_t pos) const { return block_[pos]; }
  int cap(int b) const { return caps_[b]; }
  bool is_free() const { return caps_.empty(); }

  bool IsIndependent(const Subset& subset) const;
  // Max-weight independent subset of `universe` (items with weight > 0),
  // ties by smaller id. `weight` is indexed by position.
  Subset Greedy(const Subset& universe, const std::vector<double>& weight) const;
  int Rank(const Subset& universe) const;

 private:
  std::vector<int> block_;
  std::vector<int> caps_;
  std::vector<ItemId> ids_;
};

// Incremental independence test for streaming algorithms.
class IndependenceState {
 public:
  explicit IndependenceState(const MatroidIndex* index);
  bool CanAdd(std::size_t pos) const;
  void Add(std::size_t pos);
  void Remove(std::size_t pos);

 private:
  const MatroidIndex* index_;
  std::vector<int> used_;
};

}  // namespace convsec

#endif  // CONVSEC_MATROID_H_
