// Copyright 2026 The ApproxSub Authors.
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

#ifndef APPROXSUB_MATROID_HPP_
#define APPROXSUB_MATROID_HPP_

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "approxsub/subset.hpp"

namespace approxsub {

/// Independence oracle of a matroid over {0, ..., n-1}.
class Matroid {
 public:
  virtual ~Matroid() = default;
  virtual std::size_t ground_size() const = 0;
  bool is_independent(const Subset& s) const {
    if (s.universe() != ground_size()) {
      throw DomainError("matroid: subset over " + std::to_string(s.universe()) +
                        " elements, ground set has " +
                        std::to_string(ground_size()));
    }
    return independent(s);
  }
  /// Size of every basis.
  virtual std::size_t rank() const = 0;

 protected:
  virtual bool independent(const Subset& s) const = 0;
};

using MatroidPtr = std::shared_ptr<const Matroid>;

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(std::size_t n, std::size_t k) : n_(n), k_(std::min(k, n)) {
    if (n == 0) throw ParameterError("uniform matroid: empty ground set");
  }
  std::size_t ground_size() const override { return n_; }
  std::size_t rank() const override { return k_; }

 protected:
  bool independent(const Subset& s) const override { return s.size() <= k_; }

 private:
  std::size_t n_;
  std::size_t k_;
};

/// Elements are split into blocks; S is independent iff |S ∩ block_j| is at
/// most capacity_j for every block.
class PartitionMatroid final : public Matroid {
 public:
  PartitionMatroid(std::vector<std::size_t> block_of,
                   std::vector<std::size_t> capacities)
      : block_of_(std::move(block_of)), capacities_(std::move(capacities)) {
    if (block_of_.empty()) {
      throw ParameterError("partition matroid: empty ground set");
    }
    block_sizes_.assign(capacities_.size(), 0);
    for (std::size_t e = 0; e < block_of_.size(); ++e) {
      if (block_of_[e] >= capacities_.size()) {
        throw ParameterError("partition matroid: element " +
                             std::to_string(e) + " assigned to unknown block");
      }
      ++block_sizes_[block_of_[e]];
    }
    for (std::size_t j = 0; j < capacities_.size(); ++j) {
      rank_ += std::min(capacities_[j], block_sizes_[j]);
    }
  }

  /// Builds from explicit blocks, e.g. {{0,1},{2,3}}.
  static PartitionMatroid FromBlocks(
      std::size_t n, const std::vector<std::vector<Element>>& blocks,
      std::vector<std::size_t> capacities) {
    if (blocks.size() != capacities.size()) {
      throw ParameterError("partition matroid: blocks/capacities mismatch");
    }
    std::vector<std::size_t> block_of(n, blocks.size());
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      for (Element e : blocks[j]) {
        if (e >= n || block_of[e] != blocks.size()) {
          throw ParameterError("partition matroid: blocks must partition "
                               "the ground set");
        }
        block_of[e] = j;
      }
    }
    if (std::find(block_of.begin(), block_of.end(), blocks.size()) !=
        block_of.end()) {
      throw ParameterError("partition matroid: blocks must cover every "
                           "element");
    }
    return PartitionMatroid(std::move(block_of), std::move(capacities));
  }

  std::size_t ground_size() const override { return block_of_.size(); }
  std::size_t rank() const override { return rank_; }

  const std::vector<std::size_t>& block_of() const { return block_of_; }
  const std::vector<std::size_t>& capacities() const { return capacities_; }

 protected:
  bool independent(const Subset& s) const override {
    std::vector<std::size_t> used(capacities_.size(), 0);
    bool ok = true;
    s.for_each([&](Element e) {
      if (++used[block_of_[e]] > capacities_[block_of_[e]]) ok = false;
    });
    return ok;
  }

 private:
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> capacities_;
  std::vector<std::size_t> block_sizes_;
  std::size_t rank_ = 0;
};

/// Wraps a user-supplied independence predicate. The caller vouches for the
/// matroid axioms and the stated rank.
class PredicateMatroid final : public Matroid {
 public:
  PredicateMatroid(std::size_t n, std::size_t rank,
                   std::function<bool(const Subset&)> independent)
      : n_(n), rank_(rank), independent_(std::move(independent)) {}
  std::size_t ground_size() const override { return n_; }
  std::size_t rank() const override { return rank_; }

 protected:
  bool independent(const Subset& s) const override { return independent_(s); }

 private:
  std::size_t n_;
  std::size_t rank_;
  std::function<bool(const Subset&)> independent_;
};

inline bool is_independent(const Matroid& m, const Subset& s) {
  return m.is_independent(s);
}
inline std::size_t rank(const Matroid& m) { return m.rank(); }

}  // namespace approxsub

#endif  // APPROXSUB_MATROID_HPP_
