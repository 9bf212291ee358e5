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


#include "rrkit/privacy.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "rrkit/design.h"
#include "rrkit/oracle.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

TEST(RevealingProbabilitiesTest, TwoValueExample) {
  Device d = *Device::Create(0.5, 2);
  SquareMatrix post =
      *RevealingProbabilities(d, *PopulationModel::Create({0.3, 0.7}));
  // (0.75 * 0.3) / 0.4
  EXPECT_NEAR(post(0, 0), 0.5625, 1e-15);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_NEAR(post.ColumnSum(j), 1.0, 1e-15);
  }
}

TEST(RevealingProbabilitiesTest, MatchesBayesEnumeration) {
  for (std::size_t m : {2, 3, 4}) {
    for (double p : {0.1, 0.45, 0.9}) {
      Device d = *Device::Create(p, m);
      std::vector<double> w(m);
      for (std::size_t i = 0; i < m; ++i) w[i] = 1.0 + i * i;
      PopulationModel pop = *PopulationModel::FromWeights(w);
      EXPECT_LE(SquareMatrix::MaxAbsDifference(
                    *RevealingProbabilities(d, pop),
                    *oracle::BayesPosterior(d, pop)),
                1e-12);
    }
  }
}

TEST(AlphaMeasureTest, TwoValueExample) {
  Device d = *Device::Create(0.5, 2);
  AlphaResult a = *AlphaMeasure(d, *PopulationModel::Create({0.3, 0.7}));
  EXPECT_NEAR(a.alpha, 0.2625, 1e-15);
  EXPECT_NEAR(a.alpha_reduced, 0.2625, 1e-15);
  EXPECT_NEAR(a.alpha_ij(0, 0), 0.2625, 1e-15);
  EXPECT_NEAR(a.alpha_ij(1, 0), 0.2625, 1e-15);
  EXPECT_NEAR(a.alpha_ij(0, 1), 0.175, 1e-15);
  EXPECT_NEAR(a.alpha_ij(1, 1), 0.175, 1e-15);
  EXPECT_THAT(a.argmax,
              ElementsAre(IndexPair{0, 0}, IndexPair{1, 0}));
}

TEST(AlphaMeasureTest, DegeneratePopulationRevealsNothing) {
  Device d = *Device::Create(0.5, 2);
  AlphaResult a = *AlphaMeasure(d, *PopulationModel::Create({0.0, 1.0}));
  EXPECT_EQ(a.alpha, 0.0);
}

TEST(AlphaMeasureTest, AgreesWithBruteForce) {
  for (std::size_t m : {2, 3, 5}) {
    for (double p : {0.2, 0.6}) {
      Device d = *Device::Create(p, m);
      std::vector<double> w(m);
      for (std::size_t i = 0; i < m; ++i) w[i] = 1.5 + std::sin(i + 1.0);
      PopulationModel pop = *PopulationModel::FromWeights(w);
      EXPECT_NEAR(AlphaMeasure(d, pop)->alpha,
                  *oracle::BruteForceAlpha(d, pop), 1e-12);
    }
  }
}

TEST(BetaMeasureTest, ThreeValueExample) {
  Device d = *Device::Create(0.2, 3);
  PopulationModel pop = *PopulationModel::Create({0.5, 0.3, 0.2});
  const std::vector<std::size_t> s = {0};
  BetaResult b = *BetaMeasure(d, pop, s);
  EXPECT_THAT(b.nonstigmatizing_mass,
              ElementsAre(DoubleNear(0.6363636363636364, 1e-12),
                          DoubleNear(0.4081632653061224, 1e-12),
                          DoubleNear(0.4347826086956522, 1e-12)));
  EXPECT_NEAR(b.beta, 0.4081632653061224, 1e-12);
  EXPECT_THAT(b.argmin, ElementsAre(1u));
  EXPECT_NEAR(b.beta, *oracle::BruteForceBeta(d, pop, s), 1e-12);
}

TEST(BetaMeasureTest, RejectsBadIndexSets) {
  Device d = *Device::Create(0.2, 3);
  PopulationModel pop = *PopulationModel::Create({0.5, 0.3, 0.2});
  const std::vector<std::size_t> all = {0, 1, 2};
  const std::vector<std::size_t> out = {3};
  EXPECT_FALSE(BetaMeasure(d, pop, all).ok());
  EXPECT_FALSE(BetaMeasure(d, pop, out).ok());
}

TEST(GuaranteedBoundTest, RoundTripsWithDesign) {
  EXPECT_NEAR(GuaranteedAlphaBound(*Device::Create(0.1099, 4)), 0.1, 5e-4);
  EXPECT_NEAR(GuaranteedAlphaBound(*Device::Create(0.1413, 3)), 0.1, 5e-4);
  EXPECT_NEAR(*GuaranteedBetaBound(*Device::Create(0.1639, 3), 0.15), 0.1,
              5e-4);
  for (std::size_t m : {2, 3, 7}) {
    for (double xi : {0.05, 0.3, 0.8}) {
      const double p0 = *P0AllStigmatizing(m, xi);
      EXPECT_NEAR(GuaranteedAlphaBound(*Device::Create(p0, m)), xi, 1e-12);
      const double c = (1 + xi) / 2;
      const double q0 = *P0NonStigmatizing(m, xi, c);
      EXPECT_NEAR(*GuaranteedBetaBound(*Device::Create(q0, m), c), xi, 1e-12);
    }
  }
}

TEST(GuaranteedBoundTest, UninformativeLimit) {
  EXPECT_NEAR(*GuaranteedBetaBound(*Device::Create(1e-12, 3), 0.15), 0.15,
              1e-10);
  EXPECT_NEAR(GuaranteedAlphaBound(*Device::Create(1e-12, 3)), 0.0, 1e-5);
}

TEST(GuaranteedBoundTest, AlphaGridNeverExceedsBound) {
  Device d = *Device::Create(*P0AllStigmatizing(3, 0.1), 3);
  oracle::GridSearchOptions opts{
      .step = 0.01,
      .extra_points = {oracle::AlphaAdversarialPopulation(3, 0.1)}};
  oracle::GridSearchResult r = *oracle::SimplexGridSearch(
      [&](const PopulationModel& pop) { return AlphaMeasure(d, pop)->alpha; },
      oracle::Extremum::kMax, 3, opts);
  EXPECT_LE(r.value, 0.1 + 1e-9);
  EXPECT_NEAR(r.value, 0.1, 1e-9);
}

TEST(GuaranteedBoundTest, BetaGridNeverFallsBelowBound) {
  Device d = *Device::Create(*P0NonStigmatizing(3, 0.1, 0.15), 3);
  const std::vector<std::size_t> s = {0};
  oracle::GridSearchOptions opts{
      .step = 0.01,
      .constraint = oracle::MassConstraint{{0}, 0.15},
      .extra_points = {oracle::BetaAdversarialPopulation(3, 0.15, s)}};
  oracle::GridSearchResult r = *oracle::SimplexGridSearch(
      [&](const PopulationModel& pop) {
        return BetaMeasure(d, pop, s)->beta;
      },
      oracle::Extremum::kMin, 3, opts);
  EXPECT_GE(r.value, 0.1 - 1e-9);
}

TEST(GuaranteedBoundTest, TightJustAboveP0) {
  const double p0 = *P0AllStigmatizing(3, 0.1);
  Device above = *Device::Create(p0 + 1e-6, 3);
  EXPECT_GT(
      AlphaMeasure(above, *PopulationModel::Create({0.45, 0.55, 0}))->alpha,
      0.1);
  const double q0 = *P0NonStigmatizing(3, 0.1, 0.15);
  const std::vector<std::size_t> s = {0};
  EXPECT_LT(BetaMeasure(*Device::Create(q0 + 1e-6, 3),
                        *PopulationModel::Create({0.15, 0.85, 0}), s)
                ->beta,
            0.1);
}

TEST(AssessPrivacyTest, SelectsMeasureByMode) {
  Device d = *Device::Create(0.5, 2);
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  PrivacyReport r =
      *AssessPrivacy(d, pop, *PrivacyPolicy::AllStigmatizing(0.3));
  ASSERT_TRUE(r.alpha.has_value());
  EXPECT_FALSE(r.beta.has_value());
  EXPECT_NEAR(r.alpha->alpha, 0.2625, 1e-15);
  EXPECT_NEAR(r.guaranteed_bound, GuaranteedAlphaBound(d), 1e-15);

  Device d3 = *Device::Create(0.2, 3);
  PrivacyReport b = *AssessPrivacy(
      d3, *PopulationModel::Create({0.5, 0.3, 0.2}),
      *PrivacyPolicy::NonStigmatizingSubset(0.1, 0.15, {0}));
  ASSERT_TRUE(b.beta.has_value());
  EXPECT_FALSE(b.alpha.has_value());
  EXPECT_NEAR(b.beta->beta, 0.4081632653061224, 1e-12);
  EXPECT_NEAR(b.guaranteed_bound, *GuaranteedBetaBound(d3, 0.15), 1e-15);
}

}  // namespace
}  // namespace rrkit
