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

// Deterministic hashing and random streams shared by the noise models and
// the instance generators.

#ifndef APPROXSUB_RANDOM_HPP_
#define APPROXSUB_RANDOM_HPP_

#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace approxsub {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ mix64(v));
}

/// Folds the mixer over a canonical subset key, prefixed by its length.
inline std::uint64_t hash_key(std::uint64_t seed,
                              std::span<const std::uint64_t> key) {
  std::uint64_t h = hash_combine(mix64(seed), key.size());
  for (std::uint64_t b : key) h = hash_combine(h, b);
  return h;
}

/// Top 53 bits mapped to [0, 1).
constexpr double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Counter-based SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { return to_unit((*this)()); }

  /// Uniform integer in [0, bound) by rejection; identical on every platform,
  /// unlike std::uniform_int_distribution.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t r;
    do {
      r = (*this)();
    } while (r >= limit);
    return r % bound;
  }

 private:
  std::uint64_t state_;
};

/// Seed for the i-th independent sub-experiment derived from a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i) {
  return hash_combine(base, i);
}

/// First `count` entries of a seeded Fisher-Yates shuffle of 0..n-1.
inline std::vector<std::size_t> shuffled_prefix(std::size_t n,
                                                std::size_t count,
                                                std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count && i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(count);
  return perm;
}

}  // namespace approxsub

#endif  // APPROXSUB_RANDOM_HPP_
