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

#ifndef APPROXSUB_ORACLE_HPP_
#define APPROXSUB_ORACLE_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "approxsub/subset.hpp"

namespace approxsub {

/// Black-box value oracle over subsets of {0, ..., n-1}.
///
/// evaluate() is the only way algorithms see a function. Each call bumps the
/// query counter by exactly one. Implementations override compute(), which
/// must be a pure function of the oracle's construction-time state and S.
class ValueOracle {
 public:
  explicit ValueOracle(std::size_t n) : n_(n) {}
  virtual ~ValueOracle() = default;

  ValueOracle(const ValueOracle&) = delete;
  ValueOracle& operator=(const ValueOracle&) = delete;

  std::size_t ground_size() const { return n_; }

  double evaluate(const Subset& s) const {
    if (s.universe() != n_) {
      throw DomainError("query over ground set of size " +
                        std::to_string(s.universe()) + ", oracle expects " +
                        std::to_string(n_));
    }
    queries_.fetch_add(1, std::memory_order_relaxed);
    return compute(s);
  }
  double operator()(const Subset& s) const { return evaluate(s); }

  std::uint64_t query_count() const {
    return queries_.load(std::memory_order_relaxed);
  }
  void reset_query_count() const {
    queries_.store(0, std::memory_order_relaxed);
  }

 protected:
  virtual double compute(const Subset& s) const = 0;

  // For oracles that serve queries through paths other than evaluate().
  void note_queries(std::uint64_t count) const {
    queries_.fetch_add(count, std::memory_order_relaxed);
  }

 private:
  std::size_t n_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

using OraclePtr = std::shared_ptr<const ValueOracle>;

inline double query(const ValueOracle& oracle, const Subset& s) {
  return oracle.evaluate(s);
}

/// Adapts any callable double(const Subset&) to the oracle interface.
template <typename Fn>
class LambdaOracle final : public ValueOracle {
 public:
  LambdaOracle(std::size_t n, Fn fn) : ValueOracle(n), fn_(std::move(fn)) {}

 protected:
  double compute(const Subset& s) const override { return fn_(s); }

 private:
  Fn fn_;
};

template <typename Fn>
std::shared_ptr<LambdaOracle<Fn>> make_oracle(std::size_t n, Fn fn) {
  return std::make_shared<LambdaOracle<Fn>>(n, std::move(fn));
}

}  // namespace approxsub

#endif  // APPROXSUB_ORACLE_HPP_
