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

// Maximization algorithms for approximately submodular value oracles and
// the closed-form guarantees they carry.

#ifndef APPROXSUB_SOLVERS_HPP_
#define APPROXSUB_SOLVERS_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "approxsub/matroid.hpp"
#include "approxsub/oracle.hpp"
#include "approxsub/subset.hpp"

namespace approxsub {

struct TraceStep {
  Element added = 0;
  /// Oracle queries issued while choosing this element.
  std::uint64_t queries = 0;
};

struct SolveResult {
  Subset chosen;
  double value = 0.0;  // F(chosen)
  std::vector<TraceStep> trace;
  std::uint64_t queries_used = 0;
};

/// Selects exactly k elements; each step adds argmax_{a ∉ S} F(S ∪ {a}),
/// smallest id on ties. Uses sum_{i<k} (n - i) queries; k = 0 queries F(∅)
/// once.
inline SolveResult greedy_cardinality(const ValueOracle& f, std::size_t k) {
  const std::size_t n = f.ground_size();
  if (k > n) {
    throw DomainError("greedy: k=" + std::to_string(k) + " exceeds n=" +
                      std::to_string(n));
  }
  SolveResult result;
  Subset current(n);
  Subset probe(n);
  double current_value = 0.0;
  for (std::size_t step = 0; step < k; ++step) {
    Element best = n;
    double best_value = -std::numeric_limits<double>::infinity();
    std::uint64_t issued = 0;
    for (Element a = 0; a < n; ++a) {
      if (current.contains(a)) continue;
      probe.insert(a);
      const double v = f.evaluate(probe);
      probe.erase(a);
      ++issued;
      if (v > best_value) {
        best_value = v;
        best = a;
      }
    }
    current.insert(best);
    probe.insert(best);
    current_value = best_value;
    result.trace.push_back({best, issued});
    result.queries_used += issued;
  }
  result.chosen = std::move(current);
  // The last step already observed F(S_k); k = 0 needs one query for F(∅).
  if (k == 0) {
    result.value = f.evaluate(result.chosen);
    ++result.queries_used;
  } else {
    result.value = current_value;
  }
  return result;
}

/// Repeatedly takes x* = argmax_{x in pool} F(S ∪ {x}) over the remaining
/// pool, adds it if S ∪ {x*} stays independent, and drops x* from the pool.
inline SolveResult greedy_matroid(const ValueOracle& f, const Matroid& m) {
  const std::size_t n = f.ground_size();
  if (m.ground_size() != n) {
    throw DomainError("matroid greedy: matroid and oracle ground sets differ");
  }
  SolveResult result;
  Subset current(n);
  Subset probe(n);
  std::vector<bool> pooled(n, true);
  double current_value = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t issued = 0;
  for (std::size_t remaining = n; remaining > 0; --remaining) {
    Element best = n;
    double best_value = -std::numeric_limits<double>::infinity();
    for (Element x = 0; x < n; ++x) {
      if (!pooled[x]) continue;
      probe.insert(x);
      const double v = f.evaluate(probe);
      probe.erase(x);
      ++issued;
      if (v > best_value) {
        best_value = v;
        best = x;
      }
    }
    pooled[best] = false;
    probe.insert(best);
    if (m.is_independent(probe)) {
      current.insert(best);
      current_value = best_value;
      result.trace.push_back({best, issued});
      result.queries_used += issued;
      issued = 0;
    } else {
      probe.erase(best);
    }
  }
  result.queries_used += issued;
  result.chosen = std::move(current);
  if (result.chosen.empty()) {
    result.value = f.evaluate(result.chosen);
    ++result.queries_used;
  } else {
    result.value = current_value;
  }
  return result;
}

/// Maximizes the additive surrogate F_a(S) = sum_{e in S} F({e}): queries
/// the n singletons, keeps the k largest (smallest id on ties), and queries
/// the chosen set once.
inline SolveResult curvature_topk(const ValueOracle& f, std::size_t k) {
  const std::size_t n = f.ground_size();
  if (k > n) {
    throw DomainError("curvature top-k: k=" + std::to_string(k) +
                      " exceeds n=" + std::to_string(n));
  }
  std::vector<double> singles(n);
  Subset probe(n);
  for (Element e = 0; e < n; ++e) {
    probe.insert(e);
    singles[e] = f.evaluate(probe);
    probe.erase(e);
  }
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return singles[a] > singles[b];
  });
  SolveResult result;
  result.chosen = Subset(n);
  for (std::size_t i = 0; i < k; ++i) {
    result.chosen.insert(order[i]);
    result.trace.push_back({order[i], i == 0 ? n : 0});
  }
  result.value = f.evaluate(result.chosen);
  result.queries_used = n + 1;
  return result;
}

/// Largest ground set brute_force will enumerate.
inline constexpr std::size_t kMaxBruteForceN = 24;

struct CardinalityConstraint {
  std::size_t k;
};
using Constraint = std::variant<CardinalityConstraint, const Matroid*>;

/// Exact maximizer of F over feasible sets by full enumeration. Ties go to
/// the smallest canonical key.
inline SolveResult brute_force(const ValueOracle& f,
                               const Constraint& constraint) {
  const std::size_t n = f.ground_size();
  if (n > kMaxBruteForceN) {
    throw DomainError("brute force: n=" + std::to_string(n) +
                      " exceeds enumeration guard " +
                      std::to_string(kMaxBruteForceN));
  }
  SolveResult best;
  best.value = -std::numeric_limits<double>::infinity();
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const Subset s = Subset::FromMask(mask, n);
    bool feasible;
    if (const auto* card = std::get_if<CardinalityConstraint>(&constraint)) {
      feasible = static_cast<std::size_t>(std::popcount(mask)) <= card->k;
    } else {
      feasible = std::get<const Matroid*>(constraint)->is_independent(s);
    }
    if (!feasible) continue;
    const double v = f.evaluate(s);
    ++best.queries_used;
    if (v > best.value) {
      best.value = v;
      best.chosen = s;
    }
  }
  return best;
}

inline SolveResult brute_force(const ValueOracle& f, std::size_t k) {
  return brute_force(f, Constraint{CardinalityConstraint{k}});
}
inline SolveResult brute_force(const ValueOracle& f, const Matroid& m) {
  return brute_force(f, Constraint{&m});
}

enum class BoundKind { kGreedyCardinality, kGreedyMatroid, kCurvature };

inline std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kGreedyCardinality:
      return "greedy-cardinality";
    case BoundKind::kGreedyMatroid:
      return "greedy-matroid";
    case BoundKind::kCurvature:
      return "curvature";
  }
  return "unknown";
}

struct BoundReport {
  BoundKind kind;
  std::size_t k = 0;
  double epsilon = 0.0;
  double curvature = 0.0;
  double ratio = 0.0;
};

namespace internal {
inline void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ParameterError("bound: epsilon must lie in [0, 1)");
  }
}
}  // namespace internal

/// 1/(1 + 4k eps/(1-eps)^2) * (1 - ((1-eps)/(1+eps))^(2k) (1-1/k)^k).
inline BoundReport greedy_bound(std::size_t k, double epsilon) {
  if (k == 0) throw ParameterError("greedy bound: k must be >= 1");
  internal::check_epsilon(epsilon);
  const double kk = static_cast<double>(k);
  const double shrink = (1.0 - epsilon) / (1.0 + epsilon);
  const double lead =
      1.0 / (1.0 + 4.0 * kk * epsilon / ((1.0 - epsilon) * (1.0 - epsilon)));
  const double tail =
      std::pow(shrink, 2.0 * kk) * std::pow(1.0 - 1.0 / kk, kk);
  return {BoundKind::kGreedyCardinality, k, epsilon, 0.0, lead * (1.0 - tail)};
}

/// 1/2 * (1-eps)/(1+eps) * 1/(1 + k eps/(1-eps)). The guarantee is stated
/// against the representative f, not F.
inline BoundReport matroid_bound(std::size_t k, double epsilon) {
  if (k == 0) throw ParameterError("matroid bound: k must be >= 1");
  internal::check_epsilon(epsilon);
  const double kk = static_cast<double>(k);
  const double ratio = 0.5 * ((1.0 - epsilon) / (1.0 + epsilon)) /
                       (1.0 + kk * epsilon / (1.0 - epsilon));
  return {BoundKind::kGreedyMatroid, k, epsilon, 0.0, ratio};
}

/// (1-c) ((1-eps)/(1+eps))^2.
inline BoundReport curvature_bound(double c, double epsilon) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw ParameterError("curvature bound: c must lie in [0, 1]");
  }
  internal::check_epsilon(epsilon);
  const double shrink = (1.0 - epsilon) / (1.0 + epsilon);
  return {BoundKind::kCurvature, 0, epsilon, c, (1.0 - c) * shrink * shrink};
}

}  // namespace approxsub

#endif  // APPROXSUB_SOLVERS_HPP_
