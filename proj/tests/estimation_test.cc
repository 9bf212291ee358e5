// Copyright 2026 The rrkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rrkit/estimation.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "rrkit/device.h"
#include "rrkit/oracle.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

SupportSpec Binary() { return *SupportSpec::AllStigmatizing({0, 1}); }
SupportSpec Ternary() { return *SupportSpec::AllStigmatizing({0, 1, 2}); }

// Var(mu_hat) with the last term carrying p(p - 1) instead of p(1 - p).
double FlippedVarianceMean(const Device& d, const SupportSpec& s,
                           const PopulationModel& pop, std::int64_t n) {
  const double p = d.p();
  const double m = static_cast<double>(d.m());
  const double xbar = s.ValueAverage();
  double spread = 0.0;
  for (double x : s.values()) spread += (x - xbar) * (x - xbar);
  const double mu = PopulationMean(s, pop);
  const double body = p * PopulationVariance(s, pop) +
                      (1 - p) * spread / m +
                      p * (p - 1) * (mu - xbar) * (mu - xbar);
  return body / (static_cast<double>(n) * p * p);
}

// Average proportion variance with the sign of the last term flipped.
double FlippedAvgVariance(const Device& d, const PopulationModel& pop,
                          std::int64_t n) {
  const double p = d.p();
  const double m = static_cast<double>(d.m());
  double sum_sq = 0.0;
  for (double v : pop.pi()) sum_sq += v * v;
  return (1 / (p * p) - sum_sq + (1 / m) * (1 / (p * p) - 1)) /
         static_cast<double>(n);
}

TEST(EstimateProportionsTest, Substitution) {
  Device d = *Device::Create(0.5, 2);
  ProportionEstimates e =
      *EstimateProportions(*ResponseSample::Create({40, 60}), d);
  EXPECT_THAT(e.raw, ElementsAre(DoubleNear(0.3, 1e-15), DoubleNear(0.7, 1e-15)));
  EXPECT_FALSE(e.raw_out_of_range);
}

TEST(EstimateProportionsTest, OutOfRangeIsClampedAndFlagged) {
  Device d = *Device::Create(0.5, 2);
  ProportionEstimates e =
      *EstimateProportions(*ResponseSample::Create({10, 90}), d);
  EXPECT_THAT(e.raw,
              ElementsAre(DoubleNear(-0.3, 1e-15), DoubleNear(1.3, 1e-15)));
  EXPECT_THAT(e.truncated, ElementsAre(0.0, 1.0));
  EXPECT_TRUE(e.raw_out_of_range);

  EstimateReport r =
      *Estimate(*ResponseSample::Create({10, 90}), d, Binary());
  EXPECT_THAT(r.flags, ElementsAre(kFlagRawOutOfRange));
}

TEST(EstimateProportionsTest, RawSumsToOne) {
  Device d = *Device::Create(0.37, 4);
  ProportionEstimates e =
      *EstimateProportions(*ResponseSample::Create({3, 0, 11, 7}), d);
  double sum = 0.0;
  for (double v : e.raw) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(EstimateProportionsTest, DimensionMismatch) {
  Device d = *Device::Create(0.5, 2);
  EXPECT_EQ(ErrorCodeOf(
                EstimateProportions(*ResponseSample::Create({1, 2, 3}), d)
                    .status()),
            "DIMENSION_MISMATCH");
}

TEST(EstimateMeanTest, Substitution) {
  Device d = *Device::Create(0.5, 2);
  EXPECT_NEAR(*EstimateMean(*ResponseSample::Create({40, 60}), d, Binary()),
              0.7, 1e-15);
}

TEST(EstimateMeanTest, ExpectedProportionsReturnTheTruth) {
  // lambda for p = 0.2, pi = (0.5, 0.3, 0.2): (0.366.., 0.326.., 0.306..),
  // scaled to integer counts over n = 150.
  Device d = *Device::Create(0.2, 3);
  std::vector<double> lambda =
      *ResponseDistribution(d, *PopulationModel::Create({0.5, 0.3, 0.2}));
  std::vector<std::int64_t> counts;
  for (double l : lambda) counts.push_back(std::llround(l * 150));
  ASSERT_EQ(counts[0] + counts[1] + counts[2], 150);
  EXPECT_NEAR(*EstimateMean(*ResponseSample::Create(counts), d, Ternary()),
              0.7, 1e-12);
}

TEST(EstimateMeanTest, EnumeratedExpectationIsExact) {
  Device d = *Device::Create(0.5, 2);
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  std::vector<double> lambda = *ResponseDistribution(d, pop);
  double e_mu = 0.0;
  std::vector<double> e_pi(2, 0.0);
  double total = 0.0;
  ASSERT_TRUE(oracle::EnumerateMultinomial(
                  lambda, 3,
                  [&](std::span<const std::int64_t> c, double prob) {
                    ResponseSample s = *ResponseSample::Create(
                        std::vector<std::int64_t>(c.begin(), c.end()));
                    e_mu += prob * *EstimateMean(s, d, Binary());
                    ProportionEstimates pe = *EstimateProportions(s, d);
                    for (int i = 0; i < 2; ++i) e_pi[i] += prob * pe.raw[i];
                    total += prob;
                  })
                  .ok());
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_NEAR(e_mu, 0.7, 1e-15);
  EXPECT_NEAR(e_pi[0], 0.3, 1e-15);
  EXPECT_NEAR(e_pi[1], 0.7, 1e-15);
}

TEST(VarianceMeanTheoreticalTest, CanonicalValues) {
  Device d = *Device::Create(0.5, 2);
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  EXPECT_NEAR(*VarianceMeanTheoretical(d, Binary(), pop, 100), 0.0096, 1e-15);

  Device d3 = *Device::Create(0.5, 3);
  PopulationModel pop3 = *PopulationModel::Create({0.5, 0.3, 0.2});
  EXPECT_NEAR(*VarianceMeanTheoretical(d3, Ternary(), pop3, 100),
              0.02643333333333333, 1e-15);
  EXPECT_NEAR(*VarianceMeanTheoretical(d3, Ternary(), pop3, 500),
              0.005286666666666667, 1e-16);
}

TEST(VarianceMeanTheoreticalTest, DirectQuestioningLimit) {
  Device d = *Device::Create(1 - 1e-9, 2);
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  EXPECT_NEAR(*VarianceMeanTheoretical(d, Binary(), pop, 100), 0.0021, 1e-9);
}

TEST(VarianceMeanTheoreticalTest, FlippedLastTermIsRejected) {
  Device d = *Device::Create(0.5, 2);
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  const double exact = *oracle::MultinomialVariance(d, Binary(), pop, 100);
  const double flipped = FlippedVarianceMean(d, Binary(), pop, 100);
  EXPECT_NEAR(exact, 0.0096, 1e-15);
  EXPECT_NEAR(flipped, 0.0088, 1e-15);
  EXPECT_GT(std::abs(flipped - exact) / exact, 1e-12);
}

TEST(VarianceMeanTheoreticalTest, RejectsBadSampleSize) {
  Device d = *Device::Create(0.5, 2);
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  EXPECT_EQ(ErrorCodeOf(VarianceMeanTheoretical(d, Binary(), pop, 0).status()),
            "BAD_SAMPLE_SIZE");
}

TEST(AvgVarianceTest, CanonicalValueAndFlippedSign) {
  Device d = *Device::Create(0.5, 2);
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  const double corrected = *AvgVarianceProportionsTheoretical(d, pop, 100);
  EXPECT_NEAR(corrected, 0.0192, 1e-15);
  EXPECT_NEAR(*oracle::ProportionVarianceSum(d, pop, 100), corrected, 1e-15);
  const double flipped = FlippedAvgVariance(d, pop, 100);
  EXPECT_NEAR(flipped, 0.0492, 1e-15);
  EXPECT_GT(std::abs(flipped - corrected) / corrected, 1e-12);
}

TEST(AvgVarianceTest, DegenerateNoiselessLimit) {
  Device d = *Device::Create(1 - 1e-12, 4);
  PopulationModel pop = *PopulationModel::Create({0, 0, 1, 0});
  EXPECT_NEAR(*AvgVarianceProportionsTheoretical(d, pop, 10), 0.0, 1e-10);
}

TEST(VarianceMonotonicityTest, DecreasingInP) {
  PopulationModel pop = *PopulationModel::Create({0.5, 0.3, 0.2});
  double prev_mu = INFINITY;
  double prev_pi = INFINITY;
  for (int k = 1; k <= 9; ++k) {
    Device d = *Device::Create(k / 10.0, 3);
    const double v = *VarianceMeanTheoretical(d, Ternary(), pop, 50);
    const double a = *AvgVarianceProportionsTheoretical(d, pop, 50);
    EXPECT_LT(v, prev_mu);
    EXPECT_LT(a, prev_pi);
    prev_mu = v;
    prev_pi = a;
  }
}

TEST(VarianceMeanPluginTest, Examples) {
  Device d = *Device::Create(0.5, 2);
  EXPECT_NEAR(
      *VarianceMeanPlugin(*ResponseSample::Create({40, 60}), d, Binary()),
      0.0096, 1e-15);
  EXPECT_NEAR(
      *VarianceMeanPlugin(*ResponseSample::Create({50, 50}), d, Binary()),
      0.01, 1e-15);
}

TEST(VarianceMeanPluginTest, AtExpectationMatchesTheory) {
  // lambda = (0.375, 0.3125, 0.3125) for p = 0.25, pi = (0.5, 0.25, 0.25);
  // n = 16 gives integer counts.
  Device d = *Device::Create(0.25, 3);
  PopulationModel pop = *PopulationModel::Create({0.5, 0.25, 0.25});
  ResponseSample s = *ResponseSample::Create({6, 5, 5});
  EXPECT_NEAR(*VarianceMeanPlugin(s, d, Ternary()),
              *VarianceMeanTheoretical(d, Ternary(), pop, 16), 1e-12);
}

TEST(TheoreticalVariancesTest, Bundle) {
  Device d = *Device::Create(0.5, 2);
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  VarianceReport r = *TheoreticalVariances(d, Binary(), pop, 100);
  EXPECT_EQ(r.n, 100);
  EXPECT_NEAR(r.var_mu, 0.0096, 1e-15);
  EXPECT_NEAR(r.avg_var_pi, 0.0192, 1e-15);
}

}  // namespace
}  // namespace rrkit
