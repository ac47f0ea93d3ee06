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

#include "approxsub/solvers.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "approxsub/adversarial.hpp"
#include "approxsub/functions.hpp"
#include "approxsub/matroid.hpp"
#include "approxsub/noise.hpp"

namespace approxsub {
namespace {

FunctionPtr random_instance(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<std::size_t>> covers(n);
  for (auto& c : covers) {
    for (int i = 0, m = 1 + rng() % 3; i < m; ++i) c.push_back(rng() % (2 * n));
  }
  std::vector<double> w(n);
  for (auto& x : w) x = double(rng() % 4);
  return make_sum({make_coverage(2 * n, covers), make_budget_additive(w, 5)});
}

TEST(GreedyTest, AdditiveTopK) {
  auto f = make_additive({5, 4, 3, 2, 1});
  const SolveResult r = greedy_cardinality(*f, 2);
  EXPECT_EQ(r.chosen, Subset::FromElements({0, 1}, 5));
  EXPECT_DOUBLE_EQ(r.value, 9.0);
}

TEST(GreedyTest, QueryAccounting) {
  auto f = make_additive({5, 4, 3, 2, 1, 7, 7});
  const SolveResult r = greedy_cardinality(*f, 3);
  EXPECT_EQ(r.queries_used, 7u + 6u + 5u);
  EXPECT_EQ(f->query_count(), r.queries_used);
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.trace[0].added, 5u);  // tie 7 vs 7 goes to the smaller id
  EXPECT_EQ(r.trace[1].added, 6u);
  EXPECT_EQ(r.trace[2].queries, 5u);
}

TEST(GreedyTest, ZeroBudget) {
  auto f = make_additive({1, 2});
  const SolveResult r = greedy_cardinality(*f, 0);
  EXPECT_TRUE(r.chosen.empty());
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.queries_used, 1u);
}

TEST(GreedyTest, BudgetTooLarge) {
  EXPECT_THROW(greedy_cardinality(*make_additive({1, 2}), 3), DomainError);
}

TEST(GreedyTest, ClassicalBoundWithoutNoise) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 4 + rng() % 9;
    auto f = random_instance(rng, n);
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 5); ++k) {
      const double opt = brute_force(*f, k).value;
      const double bound = 1.0 - std::pow(1.0 - 1.0 / k, double(k));
      EXPECT_GE(greedy_cardinality(*f, k).value, bound * opt - 1e-9);
    }
  }
}

TEST(GreedyTest, TrapMeasuredValue) {
  auto trap = build_greedy_trap(16, 0.5, 64);
  const SolveResult r = greedy_cardinality(*trap, 16);
  // Greedy takes A, one B element (A + {c} is deflated), then 13 C elements.
  EXPECT_DOUBLE_EQ(r.value, 4.0 + 1.0 / 64.0 + 13.0);
  EXPECT_NE(r.value, trap->claimed_greedy_value());
}

TEST(MatroidGreedyTest, UniformMatchesCardinality) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 4 + rng() % 7;
    auto f = random_instance(rng, n);
    const std::size_t k = 1 + rng() % n;
    UniformMatroid m(n, k);
    EXPECT_EQ(greedy_matroid(*f, m).chosen, greedy_cardinality(*f, k).chosen);
  }
}

TEST(MatroidGreedyTest, PartitionHandTrace) {
  auto f = make_additive({5, 4, 3, 2});
  auto m = PartitionMatroid::FromBlocks(4, {{0, 1}, {2, 3}}, {1, 1});
  const SolveResult r = greedy_matroid(*f, m);
  EXPECT_EQ(r.chosen, Subset::FromElements({0, 2}, 4));
  EXPECT_DOUBLE_EQ(r.value, 8.0);
  EXPECT_EQ(f->query_count(), r.queries_used);
}

TEST(MatroidGreedyTest, HalfOfOptimumWithoutNoise) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 4 + rng() % 7;
    auto f = random_instance(rng, n);
    std::vector<std::size_t> block_of(n);
    for (auto& b : block_of) b = rng() % 3;
    PartitionMatroid m(block_of, {1 + rng() % 2, 1 + rng() % 2, 1});
    const SolveResult r = greedy_matroid(*f, m);
    EXPECT_TRUE(m.is_independent(r.chosen));
    EXPECT_GE(r.value, 0.5 * brute_force(*f, m).value - 1e-9);
  }
}

TEST(MatroidGreedyTest, GroundSetMismatch) {
  EXPECT_THROW(greedy_matroid(*make_additive({1, 2}), UniformMatroid(3, 1)),
               DomainError);
}

TEST(CurvatureTopKTest, AdditiveMatchesGreedy) {
  auto f = make_additive({2, 9, 4, 4, 1, 7});
  EXPECT_EQ(curvature_topk(*f, 3).chosen, greedy_cardinality(*f, 3).chosen);
}

TEST(CurvatureTopKTest, CoverageSingletons) {
  auto f = make_coverage(6, {{1, 2}, {2, 3}, {5}});
  const SolveResult r = curvature_topk(*f, 2);
  EXPECT_EQ(r.chosen, Subset::FromElements({0, 1}, 3));
  EXPECT_DOUBLE_EQ(r.value, 3.0);
  EXPECT_EQ(r.queries_used, 4u);
  EXPECT_EQ(f->query_count(), 4u);
}

TEST(CurvatureTopKTest, GuaranteeUnderNoise) {
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 4 + rng() % 7;
    std::vector<std::vector<std::size_t>> covers(n);
    for (Element e = 0; e < n; ++e) {
      covers[e] = {rng() % n, n + e};
    }
    auto f = make_coverage(2 * n, covers);
    const double c = curvature(*f);
    ASSERT_LT(c, 1.0);
    for (double eps : {0.1, 0.25}) {
      auto noisy = consistent_noise(f, eps, t);
      const std::size_t k = 1 + rng() % n;
      const double opt = brute_force(*noisy, k).value;
      EXPECT_GE(curvature_topk(*noisy, k).value,
                curvature_bound(c, eps).ratio * opt - 1e-9);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 80);
}

TEST(BruteForceTest, AdditiveFullSet) {
  auto f = make_additive({1, 2, 3});
  const SolveResult r = brute_force(*f, 3);
  EXPECT_EQ(r.chosen, Subset::Full(3));
  EXPECT_DOUBLE_EQ(r.value, 6.0);
}

TEST(BruteForceTest, PlantedOptimum) {
  HardPairParams p{12, 6, 3, 4, 0.5, 0.0};
  const HiddenSet hidden = draw_hidden_set(12, 6, 31);
  auto pair = build_monotone_pair(p, hidden);
  const SolveResult r = brute_force(*pair.f_hidden, 4);
  EXPECT_DOUBLE_EQ(r.value, 4.0);
  Subset planted(12);
  for (Element e : hidden.members.elements()) {
    if (planted.size() < 4) planted.insert(e);
  }
  EXPECT_DOUBLE_EQ(pair.f_hidden->evaluate(planted), 4.0);
}

TEST(BruteForceTest, MatroidFeasibility) {
  auto f = make_additive({5, 4, 3, 2});
  auto m = PartitionMatroid::FromBlocks(4, {{0, 1}, {2, 3}}, {1, 1});
  const SolveResult r = brute_force(*f, m);
  EXPECT_EQ(r.chosen, Subset::FromElements({0, 2}, 4));
  EXPECT_DOUBLE_EQ(r.value, 8.0);
}

TEST(BruteForceTest, Guard) {
  EXPECT_THROW(brute_force(*make_additive(std::vector<double>(25, 1)), 2),
               DomainError);
}

TEST(BoundsTest, GreedyBound) {
  EXPECT_DOUBLE_EQ(greedy_bound(2, 0.0).ratio, 0.75);
  EXPECT_NEAR(greedy_bound(10, 0.01).ratio, 0.54418379597299571, 1e-12);
  for (int i = 0; i < 50; ++i) {
    const double delta = i / 50.0;
    for (std::size_t k = 2; k <= 64; ++k) {
      EXPECT_GE(greedy_bound(k, delta / k).ratio,
                1.0 - 1.0 / std::exp(1.0) - 16.0 * delta);
    }
  }
  EXPECT_THROW(greedy_bound(0, 0.1), ParameterError);
  EXPECT_THROW(greedy_bound(3, 1.0), ParameterError);
}

TEST(BoundsTest, MatroidBound) {
  EXPECT_DOUBLE_EQ(matroid_bound(5, 0.0).ratio, 0.5);
  EXPECT_NEAR(matroid_bound(8, 1.0 / 16).ratio, 0.28772378516624042, 1e-12);
  for (int i = 0; i < 50; ++i) {
    const double delta = i / 50.0;
    for (std::size_t k = 2; k <= 64; ++k) {
      EXPECT_GE(matroid_bound(k, delta / k).ratio + 1e-12, 0.5 - 2.0 * delta);
    }
  }
}

TEST(BoundsTest, CurvatureBound) {
  EXPECT_DOUBLE_EQ(curvature_bound(0.0, 0.0).ratio, 1.0);
  EXPECT_DOUBLE_EQ(curvature_bound(1.0, 0.2).ratio, 0.0);
  EXPECT_NEAR(curvature_bound(0.2, 0.1).ratio, 0.53553719008264455, 1e-12);
  EXPECT_THROW(curvature_bound(1.5, 0.1), ParameterError);
  EXPECT_EQ(to_string(curvature_bound(0.2, 0.1).kind), "curvature");
}

}  // namespace
}  // namespace approxsub
