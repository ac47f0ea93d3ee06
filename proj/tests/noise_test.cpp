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

#include "approxsub/noise.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "approxsub/functions.hpp"
#include "approxsub/random.hpp"
#include "approxsub/verify.hpp"

namespace approxsub {
namespace {

Subset random_subset(std::size_t n, SplitMix64& rng) {
  Subset s(n);
  for (Element e = 0; e < n; ++e) {
    if (rng() >> 63) s.insert(e);
  }
  return s;
}

FunctionPtr test_function() {
  return make_sum({make_coverage(12, {{0, 1}, {1, 2, 3}, {4}, {5, 6}, {6, 7},
                                      {8, 9, 10}, {11}, {0, 11}, {3, 4},
                                      {2, 9}}),
                   make_additive({1, 2, 3, 1, 2, 3, 1, 2, 3, 1})});
}

TEST(ConsistentNoiseTest, ZeroEpsilonIsIdentity) {
  auto f = test_function();
  auto noisy = consistent_noise(f, 0.0, 17);
  for (std::uint64_t m = 0; m < 1024; ++m) {
    const Subset s = Subset::FromMask(m, 10);
    EXPECT_EQ(noisy->evaluate(s), f->evaluate(s));
  }
}

TEST(ConsistentNoiseTest, SameSeedAgrees) {
  auto f = make_additive(std::vector<double>(40, 1.0));
  auto a = consistent_noise(f, 0.3, 99);
  auto b = consistent_noise(f, 0.3, 99);
  SplitMix64 rng(1);
  for (int t = 0; t < 10000; ++t) {
    const Subset s = random_subset(40, rng);
    ASSERT_EQ(a->evaluate(s), b->evaluate(s));
    ASSERT_EQ(a->evaluate(s), a->evaluate(s));
  }
}

TEST(ConsistentNoiseTest, DifferentSeedsDiffer) {
  auto f = make_additive(std::vector<double>(10, 1.0));
  auto a = consistent_noise(f, 0.3, 1);
  auto b = consistent_noise(f, 0.3, 2);
  EXPECT_NE(a->evaluate(Subset::Full(10)), b->evaluate(Subset::Full(10)));
}

TEST(ConsistentNoiseTest, RatiosInBandAndMeanNearOne) {
  auto f = make_additive(std::vector<double>(64, 1.0));
  auto noisy = consistent_noise(f, 0.2, 12345);
  SplitMix64 rng(7);
  double sum = 0.0;
  int count = 0;
  for (int t = 0; t < 100000; ++t) {
    const Subset s = random_subset(64, rng);
    if (s.empty()) continue;
    const double ratio = noisy->evaluate(s) / f->evaluate(s);
    ASSERT_GE(ratio, 0.8);
    ASSERT_LE(ratio, 1.2);
    sum += noisy->multiplier(s);
    ++count;
  }
  EXPECT_NEAR(sum / count, 1.0, 0.01);
}

TEST(ConsistentNoiseTest, EmptySetZero) {
  auto noisy = consistent_noise(test_function(), 0.5, 3);
  EXPECT_EQ(noisy->evaluate(Subset(10)), 0.0);
}

TEST(ConsistentNoiseTest, EpsilonValidated) {
  EXPECT_THROW(consistent_noise(test_function(), 1.0, 1), ParameterError);
  EXPECT_THROW(consistent_noise(test_function(), -0.1, 1), ParameterError);
}

TEST(ConsistentNoiseTest, SandwichHoldsExhaustively) {
  auto f = test_function();
  for (double eps : {0.1, 0.25}) {
    auto noisy = consistent_noise(f, eps, 5);
    EXPECT_TRUE(check_sandwich(*noisy, *f, eps).pass);
  }
}

TEST(RequiredSamplesTest, ConstantFunctionPlugIn) {
  EXPECT_EQ(required_samples(1.0, 1.0, std::numbers::e, 0.1, 3.0), 300u);
}

TEST(RequiredSamplesTest, HalvingEpsilonQuadruples) {
  EXPECT_EQ(required_samples(1.0, 1.0, std::numbers::e, 0.05, 3.0), 1200u);
  const double raw = 3.0 * 7.0 * std::log(50.0) / (2.0 * 0.03 * 0.03);
  EXPECT_EQ(required_samples(7.0, 2.0, 50.0, 0.03),
            static_cast<std::size_t>(std::ceil(raw)));
  EXPECT_EQ(required_samples(7.0, 2.0, 50.0, 0.015),
            static_cast<std::size_t>(std::ceil(4.0 * raw)));
}

TEST(RequiredSamplesTest, LogOfOneGuarded) {
  EXPECT_EQ(required_samples(1.0, 1.0, 1.0, 0.1), 1u);
}

TEST(RequiredSamplesTest, ZeroLowerBoundRejected) {
  EXPECT_THROW(required_samples(1.0, 0.0, 10.0, 0.1), SampleCountError);
  EXPECT_THROW(required_samples(1.0, 2.0, 10.0, 0.1), ParameterError);
  EXPECT_THROW(required_samples(1.0, 1.0, 10.0, 0.0), ParameterError);
}

TEST(InconsistentNoiseTest, RepeatedQueriesDiffer) {
  auto src = std::make_shared<InconsistentNoiseOracle>(
      test_function(), NoiseFamily::kUniformRelative, 0.5, 8);
  const Subset s = Subset::FromElements({1, 2}, 10);
  EXPECT_NE(src->evaluate(s), src->evaluate(s));
  EXPECT_EQ(src->query_count(), 2u);
}

TEST(InconsistentNoiseTest, DrawsStayInFamilyRange) {
  auto f = test_function();
  auto rel = std::make_shared<InconsistentNoiseOracle>(
      f, NoiseFamily::kUniformRelative, 0.5, 8);
  auto add = std::make_shared<InconsistentNoiseOracle>(
      f, NoiseFamily::kAdditiveBounded, 0.75, 8);
  const Subset s = Subset::FromElements({0, 5, 9}, 10);
  const double fs = f->evaluate(s);
  for (int i = 0; i < 1000; ++i) {
    const double r = rel->evaluate(s);
    EXPECT_GE(r, 0.5 * fs);
    EXPECT_LE(r, 1.5 * fs);
    const double a = add->evaluate(s);
    EXPECT_GE(a, fs - 0.75);
    EXPECT_LE(a, fs + 0.75);
  }
}

TEST(InconsistentNoiseTest, WidthValidated) {
  EXPECT_THROW(InconsistentNoiseOracle(test_function(),
                                       NoiseFamily::kUniformRelative, 1.5, 1),
               ParameterError);
  EXPECT_THROW(InconsistentNoiseOracle(test_function(),
                                       NoiseFamily::kAdditiveBounded, -1, 1),
               ParameterError);
}

TEST(SamplingEstimatorTest, ZeroVarianceIsExact) {
  auto f = test_function();
  auto src = std::make_shared<InconsistentNoiseOracle>(
      f, NoiseFamily::kUniformRelative, 0.0, 1);
  SamplingEstimator est(src, 5, 2);
  for (std::uint64_t m = 0; m < 1024; m += 7) {
    const Subset s = Subset::FromMask(m, 10);
    EXPECT_EQ(estimate(est, s), f->evaluate(s));
  }
}

TEST(SamplingEstimatorTest, CachesAndCountsDraws) {
  auto src = std::make_shared<InconsistentNoiseOracle>(
      test_function(), NoiseFamily::kUniformRelative, 0.5, 1);
  SamplingEstimator est(src, 40, 2);
  const Subset s = Subset::FromElements({3, 4}, 10);
  const double a = est.evaluate(s);
  EXPECT_EQ(est.evaluate(s), a);
  EXPECT_EQ(est.cached_sets(), 1u);
  EXPECT_EQ(est.query_count(), 2u);
  EXPECT_EQ(src->query_count(), 40u);
}

TEST(SamplingEstimatorTest, DifferentSeedsGiveDifferentEstimates) {
  auto src = std::make_shared<InconsistentNoiseOracle>(
      test_function(), NoiseFamily::kUniformRelative, 0.5, 1);
  SamplingEstimator a(src, 50, 10), b(src, 50, 11);
  const Subset s = Subset::FromElements({0, 1, 2}, 10);
  EXPECT_NE(a.evaluate(s), b.evaluate(s));
}

TEST(SamplingEstimatorTest, RequiredSamplesKeepEstimatesInBand) {
  // b = 1 and B = 10 over nonempty sets.
  const std::size_t n = 10;
  auto f = make_additive(std::vector<double>(n, 1.0));
  const double eps = 0.05, width = 0.5;
  const std::size_t m = required_samples(10.0, 1.0, double(n), eps);
  auto src = std::make_shared<InconsistentNoiseOracle>(
      f, NoiseFamily::kUniformRelative, width, 21);
  SamplingEstimator est(src, m, 22);
  SplitMix64 rng(23);
  int failures = 0, sets = 0;
  while (sets < 1000) {
    const Subset s = random_subset(n, rng);
    if (s.empty()) continue;
    ++sets;
    const double v = est.evaluate(s), fv = f->evaluate(s);
    if (v < (1 - eps) * fv || v > (1 + eps) * fv) ++failures;
  }
  const double per_set =
      chernoff_two_sided_tail(double(m) / (1.0 + width), eps);
  EXPECT_LE(double(failures) / sets, per_set);
}

}  // namespace
}  // namespace approxsub
