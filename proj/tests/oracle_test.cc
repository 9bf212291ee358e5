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


#include "rrkit/oracle.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "rrkit/status.h"

namespace rrkit::oracle {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

TEST(JointTableTest, SumsToOne) {
  Device d = *Device::Create(0.35, 4);
  PopulationModel pop = *PopulationModel::Create({0.1, 0.2, 0.3, 0.4});
  SquareMatrix joint = *JointTable(d, pop);
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(joint.RowSum(i), pop[i], 1e-15);
    total += joint.RowSum(i);
  }
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(BayesPosteriorTest, UniformTwoValue) {
  SquareMatrix post = *BayesPosterior(*Device::Create(0.5, 2),
                                      *PopulationModel::Create({0.5, 0.5}));
  EXPECT_NEAR(post(0, 0), 0.75, 1e-15);
  EXPECT_NEAR(post(1, 1), 0.75, 1e-15);
}

TEST(ResponseMarginalTest, Example) {
  EXPECT_THAT(*ResponseMarginal(*Device::Create(0.5, 2),
                                *PopulationModel::Create({0.3, 0.7})),
              ElementsAre(DoubleNear(0.4, 1e-15), DoubleNear(0.6, 1e-15)));
}

TEST(BruteForceTest, Examples) {
  Device d = *Device::Create(0.5, 2);
  EXPECT_NEAR(*BruteForceAlpha(d, *PopulationModel::Create({0.3, 0.7})),
              0.2625, 1e-15);
  const std::vector<std::size_t> s = {0};
  EXPECT_NEAR(*BruteForceBeta(*Device::Create(0.2, 3),
                              *PopulationModel::Create({0.5, 0.3, 0.2}), s),
              0.4081632653061224, 1e-12);
}

TEST(EnumerateMultinomialTest, VisitsEveryOutcomeOnce) {
  const std::vector<double> probs = {0.2, 0.3, 0.5};
  std::int64_t visits = 0;
  double total = 0.0;
  ASSERT_TRUE(EnumerateMultinomial(probs, 4,
                                   [&](std::span<const std::int64_t> c,
                                       double prob) {
                                     EXPECT_EQ(c[0] + c[1] + c[2], 4);
                                     ++visits;
                                     total += prob;
                                   })
                  .ok());
  EXPECT_EQ(static_cast<std::uint64_t>(visits), MultinomialOutcomeCount(4, 3));
  EXPECT_EQ(visits, 15);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(EnumerateMultinomialTest, EnforcesCap) {
  const std::vector<double> probs(4, 0.25);
  absl::Status st = EnumerateMultinomial(
      probs, 100, [](std::span<const std::int64_t>, double) {});
  EXPECT_EQ(ErrorCodeOf(st), "ENUMERATION_TOO_LARGE");
}

TEST(VarianceOracleTest, CanonicalValues) {
  Device d = *Device::Create(0.5, 2);
  SupportSpec s = *SupportSpec::AllStigmatizing({0, 1});
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  EXPECT_NEAR(*MultinomialVariance(d, s, pop, 100), 0.0096, 1e-15);

  Device d3 = *Device::Create(0.5, 3);
  SupportSpec s3 = *SupportSpec::AllStigmatizing({0, 1, 2});
  EXPECT_NEAR(*MultinomialVariance(d3, s3,
                                   *PopulationModel::Create({0.5, 0.3, 0.2}),
                                   100),
              0.02643333333333333, 1e-15);
}

TEST(VarianceOracleTest, EnumerationEqualsIdentity) {
  Device d = *Device::Create(0.5, 2);
  SupportSpec s = *SupportSpec::AllStigmatizing({0, 1});
  PopulationModel pop = *PopulationModel::Create({0.3, 0.7});
  // lambda_2 (1 - lambda_2) / (n p^2) = 0.24 / 0.75 = 8 / 25.
  EXPECT_NEAR(*EnumeratedVariance(d, s, pop, 3), 0.32, 1e-15);
  EXPECT_NEAR(*MultinomialVariance(d, s, pop, 3), 0.32, 1e-15);
}

TEST(ProportionVarianceSumTest, CanonicalValue) {
  EXPECT_NEAR(*ProportionVarianceSum(*Device::Create(0.5, 2),
                                     *PopulationModel::Create({0.3, 0.7}), 100),
              0.0192, 1e-15);
}

TEST(SimplexGridSearchTest, CountsLatticePoints) {
  GridSearchResult r = *SimplexGridSearch(
      [](const PopulationModel& pop) { return pop[0]; }, Extremum::kMax, 3,
      {.step = 0.25});
  // C(4 + 2, 2) lattice points.
  EXPECT_EQ(r.points_evaluated, 15u);
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  EXPECT_THAT(r.witness, ElementsAre(1.0, 0.0, 0.0));
}

TEST(SimplexGridSearchTest, HonorsConstraintAndExtraPoints) {
  GridSearchOptions opts{
      .step = 0.5,
      .constraint = MassConstraint{{0}, 0.3},
      .extra_points = {{0.3, 0.7}, {0.1, 0.9}}};
  GridSearchResult r = *SimplexGridSearch(
      [](const PopulationModel& pop) { return pop[0]; }, Extremum::kMin, 2,
      opts);
  EXPECT_NEAR(r.value, 0.3, 1e-15);
}

TEST(SimplexGridSearchTest, RejectsBadArguments) {
  auto f = [](const PopulationModel&) { return 0.0; };
  EXPECT_EQ(ErrorCodeOf(
                SimplexGridSearch(f, Extremum::kMax, 3, {.step = 0.3}).status()),
            "BAD_STEP");
  EXPECT_EQ(ErrorCodeOf(
                SimplexGridSearch(f, Extremum::kMax, 3, {.step = 0.0}).status()),
            "BAD_STEP");
  EXPECT_EQ(ErrorCodeOf(
                SimplexGridSearch(f, Extremum::kMax, 3, {.step = 0.6}).status()),
            "BAD_STEP");
  GridSearchOptions infeasible{.step = 0.5,
                               .constraint = MassConstraint{{0}, 1.2}};
  EXPECT_EQ(ErrorCodeOf(
                SimplexGridSearch(f, Extremum::kMin, 3, infeasible).status()),
            "INFEASIBLE_CONSTRAINT");
}

TEST(AdversarialPopulationTest, Shapes) {
  EXPECT_THAT(AlphaAdversarialPopulation(3, 0.1),
              ElementsAre(DoubleNear(0.45, 1e-15), DoubleNear(0.55, 1e-15),
                          0.0));
  const std::vector<std::size_t> s = {0};
  EXPECT_THAT(BetaAdversarialPopulation(3, 0.15, s),
              ElementsAre(DoubleNear(0.15, 1e-15), DoubleNear(0.85, 1e-15),
                          0.0));
}

}  // namespace
}  // namespace rrkit::oracle
