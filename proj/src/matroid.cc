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

#include "convsec/matroid.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "convsec/error.h"

namespace convsec {

std::string MatroidKindName(MatroidKind kind) {
  switch (kind) {
    case MatroidKind::kFree:
      return "free";
    case MatroidKind::kUniform:
      return "uniform";
    case MatroidKind::kPartition:
      return "partition";
  }
  return "unknown";
}

Matroid Matroid::Free() { return Matroid(); }

Matroid Matroid::Uniform(int rank) {
  if (rank < 0) Fail(ErrorCode::kInvalidArgument, "uniform rank must be >= 0");
  Matroid m;
  m.kind_ = MatroidKind::kUniform;
  m.rank_ = rank;
  return m;
}

Matroid Matroid::Partition(std::vector<std::vector<ItemId>> blocks,
                           std::vector<int> caps) {
  if (blocks.size() != caps.size()) {
    Fail(ErrorCode::kInvalidArgument, "partition needs one cap per block");
  }
  Matroid m;
  m.kind_ = MatroidKind::kPartition;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (caps[b] < 0) Fail(ErrorCode::kInvalidArgument, "caps must be >= 0");
    for (ItemId id : blocks[b]) {
      if (!m.block_of_.emplace(id, static_cast<int>(b)).second) {
        Fail(ErrorCode::kInvalidArgument,
             "item " + std::to_string(id) + " appears in two blocks");
      }
    }
  }
  m.blocks_ = std::move(blocks);
  m.caps_ = std::move(caps);
  return m;
}

Matroid Matroid::WithGround(std::vector<ItemId> ground) const {
  Matroid m = *this;
  std::set<ItemId> seen;
  for (ItemId id : ground) {
    if (!seen.insert(id).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate id in ground set");
    }
    if (kind_ == MatroidKind::kPartition && !block_of_.count(id)) {
      Fail(ErrorCode::kDimensionMismatch,
           "item " + std::to_string(id) + " is not in any partition block");
    }
  }
  if (kind_ == MatroidKind::kPartition) {
    for (const auto& [id, b] : block_of_) {
      if (!seen.count(id)) {
        Fail(ErrorCode::kUnknownId,
             "partition block names unknown item " + std::to_string(id));
      }
    }
  }
  m.ground_ = std::move(ground);
  m.has_ground_ = true;
  return m;
}

int Matroid::BlockOf(ItemId id) const {
  if (has_ground_ &&
      std::find(ground_.begin(), ground_.end(), id) == ground_.end()) {
    Fail(ErrorCode::kUnknownId, "unknown item id " + std::to_string(id));
  }
  if (kind_ != MatroidKind::kPartition) return 0;
  auto it = block_of_.find(id);
  if (it == block_of_.end()) {
    Fail(ErrorCode::kUnknownId, "unknown item id " + std::to_string(id));
  }
  return it->second;
}

bool Matroid::IsIndependent(const std::vector<ItemId>& ids) const {
  std::set<ItemId> unique;
  std::vector<int> used(std::max<std::size_t>(caps_.size(), 1), 0);
  for (ItemId id : ids) {
    const int b = BlockOf(id);
    if (!unique.insert(id).second) continue;
    ++used[b];
  }
  switch (kind_) {
    case MatroidKind::kFree:
      return true;
    case MatroidKind::kUniform:
      return static_cast<int>(unique.size()) <= rank_;
    case MatroidKind::kPartition:
      for (std::size_t b = 0; b < caps_.size(); ++b) {
        if (used[b] > caps_[b]) return false;
      }
      return true;
  }
  return false;
}

std::vector<ItemId> Matroid::GreedyMaxWeight(
    const std::vector<ItemId>& ids, const std::vector<double>& weights) const {
  if (ids.size() != weights.size()) {
    Fail(ErrorCode::kDimensionMismatch, "one weight per id expected");
  }
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return ids[a] < ids[b];
  });
  std::vector<ItemId> chosen;
  for (std::size_t k : order) {
    if (!(weights[k] > 0.0)) break;
    chosen.push_back(ids[k]);
    if (!IsIndependent(chosen)) chosen.pop_back();
  }
  return chosen;
}

int Matroid::Rank() const {
  const int n = static_cast<int>(ground_.size());
  switch (kind_) {
    case MatroidKind::kFree:
      return n;
    case MatroidKind::kUniform:
      return std::min(rank_, n);
    case MatroidKind::kPartition: {
      int total = 0;
      for (std::size_t b = 0; b < caps_.size(); ++b) {
        int present = 0;
        for (ItemId id : blocks_[b]) {
          if (!has_ground_ || std::find(ground_.begin(), ground_.end(), id) !=
                                  ground_.end()) {
            ++present;
          }
        }
        total += std::min(caps_[b], present);
      }
      return total;
    }
  }
  return 0;
}

Matroid Matroid::Restrict(const std::vector<ItemId>& keep) const {
  const std::set<ItemId> kept(keep.begin(), keep.end());
  Matroid m = *this;
  if (kind_ == MatroidKind::kPartition) {
    std::vector<std::vector<ItemId>> blocks;
    for (const auto& block : blocks_) {
      std::vector<ItemId> b;
      for (ItemId id : block) {
        if (kept.count(id)) b.push_back(id);
      }
      blocks.push_back(std::move(b));
    }
    m = Partition(std::move(blocks), caps_);
  }
  std::vector<ItemId> ground;
  for (ItemId id : keep) {
    if (has_ground_) BlockOf(id);
    ground.push_back(id);
  }
  return m.WithGround(std::move(ground));
}

MatroidIndex::MatroidIndex(const Matroid& matroid,
                           const std::vector<ItemId>& ids)
    : block_(ids.size(), -1), ids_(ids) {
  switch (matroid.kind()) {
    case MatroidKind::kFree:
      break;
    case MatroidKind::kUniform:
      caps_ = {matroid.uniform_rank()};
      std::fill(block_.begin(), block_.end(), 0);
      break;
    case MatroidKind::kPartition: {
      caps_ = matroid.caps();
      std::map<ItemId, int> block_of;
      for (std::size_t b = 0; b < matroid.blocks().size(); ++b) {
        for (ItemId id : matroid.blocks()[b]) {
          block_of[id] = static_cast<int>(b);
        }
      }
      for (std::size_t p = 0; p < ids.size(); ++p) {
        auto it = block_of.find(ids[p]);
        if (it == block_of.end()) {
          Fail(ErrorCode::kDimensionMismatch,
               "item " + std::to_string(ids[p]) +
                   " is not in any partition block");
        }
        block_[p] = it->second;
      }
      break;
    }
  }
}

bool MatroidIndex::IsIndependent(const Subset& subset) const {
  if (caps_.empty()) return true;
  std::vector<int> used(caps_.size(), 0);
  for (std::size_t p : subset) {
    const int b = block_[p];
    if (b >= 0 && ++used[b] > caps_[b]) return false;
  }
  return true;
}

Subset MatroidIndex::Greedy(const Subset& universe,
                            const std::vector<double>& weight) const {
  Subset order;
  order.reserve(universe.size());
  for (std::size_t p : universe) {
    if (weight[p] > 0.0) order.push_back(p);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (weight[a] != weight[b]) return weight[a] > weight[b];
    return ids_[a] < ids_[b];
  });
  if (caps_.empty()) return order;
  std::vector<int> used(caps_.size(), 0);
  Subset chosen;
  for (std::size_t p : order) {
    const int b = block_[p];
    if (b >= 0) {
      if (used[b] >= caps_[b]) continue;
      ++used[b];
    }
    chosen.push_back(p);
  }
  return chosen;
}

int MatroidIndex::Rank(const Subset& universe) const {
  if (caps_.empty()) return static_cast<int>(universe.size());
  std::vector<int> present(caps_.size(), 0);
  int free_items = 0;
  for (std::size_t p : universe) {
    if (block_[p] < 0) {
      ++free_items;
    } else {
      ++present[block_[p]];
    }
  }
  int total = free_items;
  for (std::size_t b = 0; b < caps_.size(); ++b) {
    total += std::min(present[b], caps_[b]);
  }
  return total;
}

IndependenceState::IndependenceState(const MatroidIndex* index)
    : index_(index), used_(index->num_blocks(), 0) {}

bool IndependenceState::CanAdd(std::size_t pos) const {
  const int b = index_->block(pos);
  return b < 0 || used_[b] < index_->cap(b);
}

void IndependenceState::Add(std::size_t pos) {
  const int b = index_->block(pos);
  if (b >= 0) ++used_[b];
}

void IndependenceState::Remove(std::size_t pos) {
  const int b = index_->block(pos);
  if (b >= 0) --used_[b];
}

}  // namespace convsec
