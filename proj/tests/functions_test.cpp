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

#include "approxsub/functions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "gtest/gtest.h"

namespace approxsub {
namespace {

Subset S(std::initializer_list<Element> e, std::size_t n) {
  return Subset::FromElements(e, n);
}

TEST(FunctionsTest, CoverageUnionIsUniverse) {
  auto f = make_coverage(4, {{1, 2}, {2, 3}});
  EXPECT_DOUBLE_EQ(f->evaluate(S({0, 1}, 2)), 3.0);
  EXPECT_DOUBLE_EQ(f->evaluate(S({0}, 2)), 2.0);
  EXPECT_EQ(f->kind(), "coverage");
}

TEST(FunctionsTest, BudgetCapBinds) {
  auto f = make_budget_additive({1, 1, 1, 1}, 2.5);
  EXPECT_DOUBLE_EQ(f->evaluate(S({0, 1, 2}, 4)), 2.5);
  EXPECT_DOUBLE_EQ(f->evaluate(S({3}, 4)), 1.0);
}

TEST(FunctionsTest, BudgetAdditiveGeneralWeights) {
  auto f = make_budget_additive({0.5, 2, 3}, 4);
  EXPECT_DOUBLE_EQ(f->evaluate(S({0, 1}, 3)), 2.5);
  EXPECT_DOUBLE_EQ(f->evaluate(S({1, 2}, 3)), 4.0);
}

TEST(FunctionsTest, ConcaveCardinalityDecoyTable) {
  const double n = 100, h = 25, alpha = 5;
  std::vector<double> table(101);
  for (std::size_t x = 0; x <= 100; ++x) {
    table[x] = std::min<double>(x, x * h / n + alpha * (1 - h / n));
  }
  table[0] = 0.0;
  auto f = make_concave_cardinality(table);
  Subset s(100);
  for (Element e = 0; e < 12; ++e) s.insert(e);
  EXPECT_DOUBLE_EQ(f->evaluate(s), 6.75);
}

TEST(FunctionsTest, ConcaveTableValidated) {
  EXPECT_THROW(make_concave_cardinality({0, 1, 3}), ParameterError);
  EXPECT_THROW(make_concave_cardinality({0, 2, 1}), ParameterError);
  EXPECT_THROW(make_concave_cardinality({1, 2, 3}), ParameterError);
  EXPECT_THROW(make_concave_cardinality({0}), ParameterError);
  EXPECT_NO_THROW(make_concave_cardinality({0, 2, 3, 3}));
}

TEST(FunctionsTest, NegativeWeightsRejected) {
  EXPECT_THROW(make_additive({1, -1}), ParameterError);
  EXPECT_THROW(make_budget_additive({1, -1}, 3), ParameterError);
  EXPECT_THROW(make_budget_additive({1, 1}, -1), ParameterError);
  EXPECT_THROW(make_additive({}), ParameterError);
}

TEST(FunctionsTest, SumAddsTermsAndChecksWidths) {
  auto f = make_sum({make_additive({1, 2, 3}), make_budget_additive({1, 1, 1}, 1)});
  EXPECT_DOUBLE_EQ(f->evaluate(S({0, 2}, 3)), 5.0);
  EXPECT_THROW(make_sum({make_additive({1, 2}), make_additive({1, 2, 3})}),
               ParameterError);
}

TEST(FunctionsTest, EmptySetNormalized) {
  for (const auto& f :
       {make_additive({1, 2}), make_budget_additive({1, 2}, 1),
        make_coverage(3, {{0}, {1, 2}}), make_concave_cardinality({0, 1, 1.5})}) {
    EXPECT_EQ(f->evaluate(Subset(f->ground_size())), 0.0);
  }
}

TEST(FunctionsTest, UnitWeightFastPathMatchesGeneralSum) {
  std::mt19937_64 rng(5);
  const std::size_t n = 200;
  std::vector<double> unit(n), spread(n);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i] = static_cast<double>(rng() % 2);
    spread[i] = unit[i] * 1.5;
  }
  auto fu = make_additive(unit);
  auto fs = make_additive(spread);
  auto bu = make_budget_additive(unit, 40);
  for (int t = 0; t < 50; ++t) {
    Subset s(n);
    for (Element e = 0; e < n; ++e) if (rng() % 2) s.insert(e);
    EXPECT_DOUBLE_EQ(fu->evaluate(s) * 1.5, fs->evaluate(s));
    EXPECT_DOUBLE_EQ(bu->evaluate(s), std::min(40.0, fu->evaluate(s)));
  }
}

TEST(MarginalTest, Additive) {
  auto f = make_additive({1, 2, 3});
  EXPECT_DOUBLE_EQ(marginal(*f, Subset(3), 1), 2.0);
}

TEST(MarginalTest, CoverageOverlap) {
  auto f = make_coverage(4, {{1, 2}, {2, 3}});
  EXPECT_DOUBLE_EQ(marginal(*f, S({0}, 2), 1), 1.0);
}

TEST(MarginalTest, SaturatedBudget) {
  auto f = make_budget_additive({1, 1, 1}, 2);
  EXPECT_DOUBLE_EQ(marginal(*f, S({0, 1}, 3), 2), 0.0);
}

TEST(MarginalTest, ElementAlreadyPresent) {
  auto f = make_additive({1, 2, 3});
  EXPECT_THROW(marginal(*f, S({1}, 3), 1), DomainError);
}

TEST(CurvatureTest, AdditiveIsZero) {
  EXPECT_DOUBLE_EQ(curvature(*make_additive({1, 2, 3, 4})), 0.0);
}

TEST(CurvatureTest, IdenticalCoversIsOne) {
  auto f = make_coverage(3, {{0, 1}, {0, 1}, {0, 1}});
  EXPECT_DOUBLE_EQ(curvature(*f), 1.0);
}

TEST(CurvatureTest, OverlappingPair) {
  auto f = make_coverage(4, {{1, 2}, {2, 3}});
  EXPECT_DOUBLE_EQ(curvature(*f), 0.5);
}

TEST(CurvatureTest, ZeroSingletonUndefined) {
  EXPECT_THROW(curvature(*make_additive({1, 0, 2})), UndefinedCurvatureError);
}

TEST(CurvatureTest, QueryCount) {
  auto f = make_coverage(4, {{1, 2}, {2, 3}, {0}});
  curvature(*f);
  EXPECT_EQ(f->query_count(), 2 * 3 + 1u);
}

// Independent oracle: min over a of the last marginal ratio, by hand.
TEST(CurvatureTest, MatchesDirectDefinitionOnRandomCoverage) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + rng() % 6;
    std::vector<std::vector<std::size_t>> covers(n);
    for (auto& c : covers) {
      c.push_back(rng() % 8);
      c.push_back(rng() % 8);
    }
    auto f = make_coverage(8, covers);
    double min_ratio = 1.0;
    for (Element a = 0; a < n; ++a) {
      std::set<std::size_t> others, mine(covers[a].begin(), covers[a].end());
      for (Element b = 0; b < n; ++b) {
        if (b != a) others.insert(covers[b].begin(), covers[b].end());
      }
      std::size_t fresh = 0;
      for (auto u : mine) fresh += others.count(u) ? 0 : 1;
      min_ratio = std::min(min_ratio, double(fresh) / double(mine.size()));
    }
    EXPECT_NEAR(curvature(*f), 1.0 - min_ratio, 1e-12);
  }
}

}  // namespace
}  // namespace approxsub
