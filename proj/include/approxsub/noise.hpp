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

// Noise models over an exact function f.
//
// ConsistentNoiseOracle: F(S) = xi_S * f(S), with xi_S a fixed function of
// (seed, S) uniform on [1-eps, 1+eps]. Re-querying S returns the same value.
//
// InconsistentNoiseOracle: every query is a fresh draw with mean f(S).
// SamplingEstimator averages m draws per set once and caches the result,
// which turns the inconsistent source back into a consistent oracle.

#ifndef APPROXSUB_NOISE_HPP_
#define APPROXSUB_NOISE_HPP_

#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "approxsub/oracle.hpp"
#include "approxsub/random.hpp"
#include "approxsub/subset.hpp"

namespace approxsub {

class ConsistentNoiseOracle final : public ValueOracle {
 public:
  ConsistentNoiseOracle(OraclePtr base, double epsilon, std::uint64_t seed)
      : ValueOracle(base ? base->ground_size() : 1),
        base_(std::move(base)),
        epsilon_(epsilon),
        seed_(seed) {
    if (!base_) throw ParameterError("consistent noise: null base function");
    if (!(epsilon_ >= 0.0 && epsilon_ < 1.0)) {
      throw ParameterError("consistent noise: epsilon must lie in [0, 1)");
    }
  }

  double epsilon() const { return epsilon_; }
  std::uint64_t seed() const { return seed_; }
  const OraclePtr& base() const { return base_; }

  /// The multiplier xi_S in [1-eps, 1+eps).
  double multiplier(const Subset& s) const {
    const double u = to_unit(hash_key(seed_, s.key()));
    return 1.0 + epsilon_ * (2.0 * u - 1.0);
  }

 protected:
  double compute(const Subset& s) const override {
    if (s.empty()) return 0.0;
    return multiplier(s) * base_->evaluate(s);
  }

 private:
  OraclePtr base_;
  double epsilon_;
  std::uint64_t seed_;
};

inline std::shared_ptr<ConsistentNoiseOracle> consistent_noise(
    OraclePtr f, double epsilon, std::uint64_t seed) {
  return std::make_shared<ConsistentNoiseOracle>(std::move(f), epsilon, seed);
}

enum class NoiseFamily {
  /// f(S) * (1 + w*(2u-1)), w in [0, 1].
  kUniformRelative,
  /// f(S) + w*(2u-1) on nonempty S.
  kAdditiveBounded,
};

inline std::string to_string(NoiseFamily f) {
  return f == NoiseFamily::kUniformRelative ? "uniform_relative"
                                            : "additive_bounded";
}

class InconsistentNoiseOracle final : public ValueOracle {
 public:
  InconsistentNoiseOracle(OraclePtr base, NoiseFamily family, double width,
                          std::uint64_t seed)
      : ValueOracle(base ? base->ground_size() : 1),
        base_(std::move(base)),
        family_(family),
        width_(width),
        seed_(seed) {
    if (!base_) throw ParameterError("inconsistent noise: null base function");
    if (!(width_ >= 0.0) ||
        (family_ == NoiseFamily::kUniformRelative && width_ > 1.0)) {
      throw ParameterError(
          "inconsistent noise: width must be >= 0 (and <= 1 for relative)");
    }
  }

  NoiseFamily family() const { return family_; }
  double width() const { return width_; }
  const OraclePtr& base() const { return base_; }

  /// Mean of `count` draws for S from the given stream, starting at draw
  /// index `first`. Counts as `count` queries.
  double sample_mean(const Subset& s, std::uint64_t stream, std::size_t count,
                     std::uint64_t first = 0) const {
    s.check_width(Subset(ground_size()));
    note_queries(count);
    if (count == 0 || s.empty()) return 0.0;
    const double fs = base_->evaluate(s);
    const std::uint64_t set_hash =
        hash_key(hash_combine(seed_, stream), s.key());
    double noise_sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double u = to_unit(hash_combine(set_hash, first + i));
      noise_sum += 2.0 * u - 1.0;
    }
    const double mean_noise = noise_sum / static_cast<double>(count);
    return family_ == NoiseFamily::kUniformRelative
               ? fs * (1.0 + width_ * mean_noise)
               : fs + width_ * mean_noise;
  }

 protected:
  double compute(const Subset& s) const override {
    const std::uint64_t index = draws_.fetch_add(1, std::memory_order_relaxed);
    if (s.empty()) return 0.0;
    const double fs = base_->evaluate(s);
    const double u = to_unit(hash_combine(
        hash_key(hash_combine(seed_, kDirectStream), s.key()), index));
    return family_ == NoiseFamily::kUniformRelative
               ? fs * (1.0 + width_ * (2.0 * u - 1.0))
               : fs + width_ * (2.0 * u - 1.0);
  }

 private:
  static constexpr std::uint64_t kDirectStream = ~std::uint64_t{0};

  OraclePtr base_;
  NoiseFamily family_;
  double width_;
  std::uint64_t seed_;
  mutable std::atomic<std::uint64_t> draws_{0};
};

class SampleCountError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// m = ceil(c * B * ln(n) / (b * eps^2)), at least 1. `n` is real so that the
/// log factor can be set directly (n = e gives ln n = 1).
inline std::size_t required_samples(double upper, double lower, double n,
                                    double epsilon,
                                    double confidence_constant = 3.0) {
  if (!(lower > 0.0)) {
    throw SampleCountError(
        "lower value bound b must be > 0; multiplicative sampling cannot "
        "certify sets with values near zero, use additive estimation");
  }
  if (!(upper >= lower)) throw ParameterError("need 0 < b <= B");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterError("epsilon must lie in (0, 1)");
  }
  if (!(confidence_constant > 0.0)) {
    throw ParameterError("confidence constant must be > 0");
  }
  if (!(n >= 1.0)) throw ParameterError("n must be >= 1");
  const double raw = confidence_constant * upper * std::log(n) /
                     (lower * epsilon * epsilon);
  // Absorb the rounding error of the division before taking the ceiling.
  const double m = std::ceil(raw * (1.0 - 1e-12));
  return m < 1.0 ? 1 : static_cast<std::size_t>(m);
}

/// Averages m draws of an inconsistent source per set, once. Later queries
/// of the same set return the cached estimate.
class SamplingEstimator final : public ValueOracle {
 public:
  SamplingEstimator(std::shared_ptr<const InconsistentNoiseOracle> source,
                    std::size_t samples, std::uint64_t seed)
      : ValueOracle(source ? source->ground_size() : 1),
        source_(std::move(source)),
        samples_(samples),
        seed_(seed) {
    if (!source_) throw ParameterError("estimator: null source");
    if (samples_ == 0) throw ParameterError("estimator: m must be >= 1");
  }

  std::size_t samples_per_set() const { return samples_; }
  const InconsistentNoiseOracle& source() const { return *source_; }

  std::size_t cached_sets() const {
    std::lock_guard lock(mu_);
    return cache_.size();
  }

  /// Calls fn(S, estimate) for every cached set, in unspecified order.
  template <typename Fn>
  void for_each_cached(Fn&& fn) const {
    std::lock_guard lock(mu_);
    for (const auto& [s, v] : cache_) fn(s, v);
  }

 protected:
  double compute(const Subset& s) const override {
    std::lock_guard lock(mu_);
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    const double v = source_->sample_mean(s, seed_, samples_);
    cache_.emplace(s, v);
    return v;
  }

 private:
  std::shared_ptr<const InconsistentNoiseOracle> source_;
  std::size_t samples_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Subset, double, SubsetHash> cache_;
};

inline double estimate(const SamplingEstimator& est, const Subset& s) {
  return est.evaluate(s);
}

}  // namespace approxsub

#endif  // APPROXSUB_NOISE_HPP_
