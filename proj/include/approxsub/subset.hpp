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

// Ground sets and packed subset encoding.

#ifndef APPROXSUB_SUBSET_HPP_
#define APPROXSUB_SUBSET_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace approxsub {

/// Raised when an argument falls outside an operation's domain (element id
/// out of range, mismatched ground-set widths, element already present).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when construction parameters violate a required relation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Element = std::size_t;

/// The ground set {0, ..., n-1}.
class GroundSet {
 public:
  explicit GroundSet(std::size_t n) : n_(n) {
    if (n == 0) throw DomainError("ground set must be nonempty");
  }
  std::size_t size() const { return n_; }
  bool operator==(const GroundSet&) const = default;

 private:
  std::size_t n_;
};

/// A subset of {0, ..., n-1} stored as packed 64-bit blocks.
///
/// Bits at positions >= n are always zero and the cardinality is cached, so
/// equality is block equality and size() is O(1).
class Subset {
 public:
  static constexpr std::size_t kBlockBits = 64;

  Subset() = default;
  explicit Subset(std::size_t n)
      : n_(n), blocks_((n + kBlockBits - 1) / kBlockBits, 0) {}

  /// Builds the canonical subset containing each listed id once. Duplicates
  /// and order are irrelevant.
  static Subset FromElements(std::span<const Element> elements,
                             std::size_t n) {
    Subset s(n);
    for (Element e : elements) {
      if (e >= n) {
        throw DomainError("element " + std::to_string(e) +
                          " outside ground set of size " + std::to_string(n));
      }
      s.insert(e);
    }
    return s;
  }
  static Subset FromElements(std::initializer_list<Element> elements,
                             std::size_t n) {
    return FromElements(std::span<const Element>(elements.begin(),
                                                 elements.size()),
                        n);
  }

  static Subset Full(std::size_t n) {
    Subset s(n);
    for (auto& b : s.blocks_) b = ~std::uint64_t{0};
    s.mask_tail();
    s.size_ = n;
    return s;
  }

  /// Subset whose element i is bit i of `mask`. Requires n <= 64.
  static Subset FromMask(std::uint64_t mask, std::size_t n) {
    if (n > kBlockBits) throw DomainError("FromMask requires n <= 64");
    Subset s(n);
    if (n == 0 && mask != 0) throw DomainError("FromMask: bits set beyond n=0");
    if (n > 0) {
      if (n < kBlockBits && (mask >> n) != 0) {
        throw DomainError("FromMask: bits set beyond n=" + std::to_string(n));
      }
      s.blocks_[0] = mask;
      s.size_ = static_cast<std::size_t>(std::popcount(mask));
    }
    return s;
  }

  std::size_t universe() const { return n_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::span<const std::uint64_t> blocks() const { return blocks_; }

  bool contains(Element e) const {
    return e < n_ && ((blocks_[e / kBlockBits] >> (e % kBlockBits)) & 1u);
  }

  /// Returns true if e was newly added.
  bool insert(Element e) {
    check_element(e);
    std::uint64_t& b = blocks_[e / kBlockBits];
    const std::uint64_t bit = std::uint64_t{1} << (e % kBlockBits);
    if (b & bit) return false;
    b |= bit;
    ++size_;
    return true;
  }

  /// Returns true if e was present.
  bool erase(Element e) {
    check_element(e);
    std::uint64_t& b = blocks_[e / kBlockBits];
    const std::uint64_t bit = std::uint64_t{1} << (e % kBlockBits);
    if (!(b & bit)) return false;
    b &= ~bit;
    --size_;
    return true;
  }

  Subset with(Element e) const {
    Subset s = *this;
    s.insert(e);
    return s;
  }
  Subset without(Element e) const {
    Subset s = *this;
    s.erase(e);
    return s;
  }

  Subset& operator|=(const Subset& o) {
    check_width(o);
    size_ = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      blocks_[i] |= o.blocks_[i];
      size_ += static_cast<std::size_t>(std::popcount(blocks_[i]));
    }
    return *this;
  }
  Subset& operator&=(const Subset& o) {
    check_width(o);
    size_ = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      blocks_[i] &= o.blocks_[i];
      size_ += static_cast<std::size_t>(std::popcount(blocks_[i]));
    }
    return *this;
  }
  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }

  Subset complement() const {
    Subset s = *this;
    for (auto& b : s.blocks_) b = ~b;
    s.mask_tail();
    s.size_ = n_ - size_;
    return s;
  }

  /// |this ∩ o| without materializing the intersection.
  std::size_t intersection_size(const Subset& o) const {
    check_width(o);
    std::size_t c = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(blocks_[i] & o.blocks_[i]));
    }
    return c;
  }

  bool is_subset_of(const Subset& o) const {
    check_width(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i] & ~o.blocks_[i]) return false;
    }
    return true;
  }

  /// Calls fn(e) for each member in increasing order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      std::uint64_t b = blocks_[i];
      while (b) {
        const int tz = std::countr_zero(b);
        fn(i * kBlockBits + static_cast<std::size_t>(tz));
        b &= b - 1;
      }
    }
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size_);
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  /// Canonical identity: the block sequence, least-significant block first,
  /// with trailing zero blocks trimmed. The empty set has an empty key.
  std::vector<std::uint64_t> key() const {
    std::size_t len = blocks_.size();
    while (len > 0 && blocks_[len - 1] == 0) --len;
    return {blocks_.begin(), blocks_.begin() + static_cast<long>(len)};
  }

  /// Low 64 bits of the membership. Exact when n <= 64.
  std::uint64_t mask() const { return blocks_.empty() ? 0 : blocks_[0]; }

  void check_width(const Subset& o) const {
    if (o.n_ != n_) {
      throw DomainError("subset widths differ: " + std::to_string(n_) +
                        " vs " + std::to_string(o.n_));
    }
  }

  bool operator==(const Subset& o) const {
    return n_ == o.n_ && blocks_ == o.blocks_;
  }

  /// Orders by canonical key read as a little-endian integer.
  bool operator<(const Subset& o) const {
    check_width(o);
    for (std::size_t i = blocks_.size(); i-- > 0;) {
      if (blocks_[i] != o.blocks_[i]) return blocks_[i] < o.blocks_[i];
    }
    return false;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](Element e) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    });
    return s + "}";
  }

 private:
  void check_element(Element e) const {
    if (e >= n_) {
      throw DomainError("element " + std::to_string(e) +
                        " outside ground set of size " + std::to_string(n_));
    }
  }
  void mask_tail() {
    const std::size_t rem = n_ % kBlockBits;
    if (rem != 0 && !blocks_.empty()) {
      blocks_.back() &= (std::uint64_t{1} << rem) - 1;
    }
  }

  std::size_t n_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

inline Subset subset_encode(std::span<const Element> elements,
                            const GroundSet& ground) {
  return Subset::FromElements(elements, ground.size());
}

struct SubsetHash {
  std::size_t operator()(const Subset& s) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.universe();
    for (std::uint64_t b : s.blocks()) {
      h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace approxsub

#endif  // APPROXSUB_SUBSET_HPP_
