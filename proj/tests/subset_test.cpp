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

#include "approxsub/subset.hpp"

#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "gtest/gtest.h"
#include "approxsub/oracle.hpp"

namespace approxsub {
namespace {

TEST(SubsetTest, EmptyEncoding) {
  const Subset s = subset_encode({}, GroundSet(5));
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.size(), 0u);
  EXPECT_EQ(s.mask(), 0u);
}

TEST(SubsetTest, OrderAndDuplicatesIgnored) {
  const std::vector<Element> raw{2, 0, 2};
  const Subset s = subset_encode(raw, GroundSet(4));
  EXPECT_EQ(s.mask(), 0b0101u);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s, Subset::FromElements({0, 2}, 4));
}

TEST(SubsetTest, FullSetIsComplementOfEmpty) {
  std::vector<Element> all;
  for (Element e = 0; e < 14; ++e) all.push_back(e);
  const Subset s = subset_encode(all, GroundSet(14));
  EXPECT_EQ(s.size(), 14u);
  EXPECT_EQ(s, Subset::Full(14));
  EXPECT_EQ(s, Subset(14).complement());
}

TEST(SubsetTest, OutOfRangeRejected) {
  EXPECT_THROW(Subset::FromElements({4}, 4), DomainError);
  Subset s(4);
  EXPECT_THROW(s.insert(7), DomainError);
}

TEST(SubsetTest, MixedWidthsRejected) {
  Subset a(4), b(5);
  EXPECT_THROW(a |= b, DomainError);
  EXPECT_THROW(a.is_subset_of(b), DomainError);
}

TEST(SubsetTest, InsertEraseReportChange) {
  Subset s(70);
  EXPECT_TRUE(s.insert(65));
  EXPECT_FALSE(s.insert(65));
  EXPECT_TRUE(s.contains(65));
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.erase(65));
  EXPECT_FALSE(s.erase(65));
  EXPECT_TRUE(s.empty());
}

TEST(SubsetTest, MultiBlockAlgebraMatchesStdSet) {
  std::mt19937_64 rng(11);
  const std::size_t n = 150;
  for (int trial = 0; trial < 200; ++trial) {
    std::set<Element> ra, rb;
    Subset a(n), b(n);
    for (Element e = 0; e < n; ++e) {
      if (rng() % 3 == 0) { ra.insert(e); a.insert(e); }
      if (rng() % 2 == 0) { rb.insert(e); b.insert(e); }
    }
    std::set<Element> uni = ra, inter;
    uni.insert(rb.begin(), rb.end());
    for (Element e : ra) if (rb.count(e)) inter.insert(e);
    EXPECT_EQ((a | b).elements(), std::vector<Element>(uni.begin(), uni.end()));
    EXPECT_EQ((a & b).elements(),
              std::vector<Element>(inter.begin(), inter.end()));
    EXPECT_EQ(a.intersection_size(b), inter.size());
    EXPECT_EQ((a & b).is_subset_of(a), true);
    EXPECT_EQ(a.complement().size(), n - ra.size());
    EXPECT_EQ((a | a.complement()), Subset::Full(n));
  }
}

TEST(SubsetTest, ComplementKeepsTailClear) {
  const Subset s = Subset(70).complement();
  EXPECT_EQ(s.size(), 70u);
  EXPECT_EQ(s.blocks()[1] >> 6, 0u);
}

TEST(SubsetTest, FromMaskRoundTrip) {
  for (std::uint64_t m = 0; m < 256; ++m) {
    EXPECT_EQ(Subset::FromMask(m, 8).mask(), m);
  }
  EXPECT_THROW(Subset::FromMask(0x100, 8), DomainError);
}

TEST(SubsetTest, HashAndEqualityAgree) {
  std::unordered_set<Subset, SubsetHash> seen;
  for (std::uint64_t m = 0; m < 1024; ++m) seen.insert(Subset::FromMask(m, 10));
  EXPECT_EQ(seen.size(), 1024u);
  EXPECT_TRUE(seen.count(Subset::FromElements({1, 3}, 10)));
}

TEST(SubsetTest, OrderingIsStrict) {
  const Subset a = Subset::FromElements({0}, 70);
  const Subset b = Subset::FromElements({65}, 70);
  EXPECT_TRUE(a < b);
  EXPECT_FALSE(b < a);
  EXPECT_FALSE(a < a);
}

TEST(SubsetTest, ToString) {
  EXPECT_EQ(Subset::FromElements({3, 1}, 5).to_string(), "{1,3}");
  EXPECT_EQ(Subset(5).to_string(), "{}");
}

TEST(OracleTest, AdditiveQueryCountsAndValue) {
  auto f = make_oracle(3, [](const Subset& s) {
    const double w[] = {1, 2, 3};
    double total = 0;
    s.for_each([&](Element e) { total += w[e]; });
    return total;
  });
  EXPECT_EQ(f->query_count(), 0u);
  EXPECT_DOUBLE_EQ(query(*f, Subset::FromElements({0, 2}, 3)), 4.0);
  EXPECT_EQ(f->query_count(), 1u);
}

TEST(OracleTest, RepeatedQueriesConsistentAndCounted) {
  auto f = make_oracle(4, [](const Subset& s) { return double(s.size()); });
  const Subset s = Subset::FromElements({1, 2}, 4);
  const double a = f->evaluate(s);
  const double b = f->evaluate(s);
  EXPECT_EQ(a, b);
  EXPECT_EQ(f->query_count(), 2u);
  f->reset_query_count();
  EXPECT_EQ(f->query_count(), 0u);
}

TEST(OracleTest, EmptySetIsZero) {
  auto f = make_oracle(4, [](const Subset& s) { return 2.0 * s.size(); });
  EXPECT_EQ(f->evaluate(Subset(4)), 0.0);
}

TEST(OracleTest, WrongWidthRejected) {
  auto f = make_oracle(4, [](const Subset& s) { return double(s.size()); });
  EXPECT_THROW(f->evaluate(Subset(5)), DomainError);
}

}  // namespace
}  // namespace approxsub
