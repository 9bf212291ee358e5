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


#include "rrkit/device.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "rrkit/random.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

TEST(ResponseKernelTest, TwoValueDevice) {
  ResponseKernel k(*Device::Create(0.5, 2));
  EXPECT_DOUBLE_EQ(k(0, 0), 0.75);
  EXPECT_DOUBLE_EQ(k(1, 1), 0.75);
  EXPECT_DOUBLE_EQ(k(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(k(1, 0), 0.25);
}

TEST(ResponseKernelTest, RowsAreDistributions) {
  for (std::size_t m : {2, 3, 5, 9}) {
    for (double p : {0.05, 0.3, 0.77, 0.99}) {
      ResponseKernel k(*Device::Create(p, m));
      for (std::size_t r = 0; r < m; ++r) {
        EXPECT_NEAR(k.matrix().RowSum(r), 1.0, 1e-15);
        EXPECT_NEAR(k(r, r), p + (1 - p) / m, 1e-15);
      }
    }
  }
}

TEST(ResponseForUniformTest, TruthCardReturnsTrueIndex) {
  for (double p : {0.01, 0.5, 0.99}) {
    Device d = *Device::Create(p, 4);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(ResponseForUniform(d, k, 0.0), k);
      EXPECT_EQ(ResponseForUniform(d, k, std::nextafter(p, 0.0)), k);
    }
  }
}

TEST(ResponseForUniformTest, ForcedCardsSplitTheRemainder) {
  Device d = *Device::Create(0.6, 4);
  // Forced cards occupy [0.6, 0.7), [0.7, 0.8), [0.8, 0.9), [0.9, 1).
  EXPECT_EQ(ResponseForUniform(d, 3, 0.61), 0u);
  EXPECT_EQ(ResponseForUniform(d, 3, 0.75), 1u);
  EXPECT_EQ(ResponseForUniform(d, 0, 0.85), 2u);
  EXPECT_EQ(ResponseForUniform(d, 0, std::nextafter(1.0, 0.0)), 3u);
}

TEST(DrawResponseTest, RejectsBadIndex) {
  Device d = *Device::Create(0.5, 2);
  SupportSpec s = *SupportSpec::AllStigmatizing({0, 1});
  RandomStream stream(1);
  EXPECT_EQ(ErrorCodeOf(DrawResponse(d, s, 2, stream).status()),
            "INDEX_OUT_OF_RANGE");
}

TEST(DrawResponseTest, DeterministicForAStream) {
  Device d = *Device::Create(0.3, 3);
  SupportSpec s = *SupportSpec::AllStigmatizing({0, 1, 2});
  RandomStream a(99, 7);
  RandomStream b(99, 7);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(*DrawResponse(d, s, i % 3, a), *DrawResponse(d, s, i % 3, b));
  }
}

TEST(DrawResponseTest, FrequenciesMatchKernel) {
  constexpr int kDraws = 1000000;
  Device d = *Device::Create(0.5, 3);
  SupportSpec s = *SupportSpec::AllStigmatizing({0, 1, 2});
  RandomStream stream(2026);
  std::vector<int> hits(3, 0);
  for (int i = 0; i < kDraws; ++i) ++hits[*DrawResponse(d, s, 1, stream)];
  ResponseKernel k(d);
  for (std::size_t j = 0; j < 3; ++j) {
    const double q = k(1, j);
    const double se = std::sqrt(q * (1 - q) / kDraws);
    EXPECT_NEAR(static_cast<double>(hits[j]) / kDraws, q, 3 * se);
  }
}

TEST(ResponseDistributionTest, Examples) {
  Device d = *Device::Create(0.5, 2);
  EXPECT_THAT(*ResponseDistribution(d, *PopulationModel::Create({0.3, 0.7})),
              ElementsAre(DoubleNear(0.4, 1e-15), DoubleNear(0.6, 1e-15)));
  Device d3 = *Device::Create(0.5, 3);
  std::vector<double> lambda =
      *ResponseDistribution(d3, *PopulationModel::Create({0.5, 0.3, 0.2}));
  EXPECT_THAT(lambda, ElementsAre(DoubleNear(5.0 / 12, 1e-15),
                                  DoubleNear(19.0 / 60, 1e-15),
                                  DoubleNear(4.0 / 15, 1e-15)));
  EXPECT_EQ(ErrorCodeOf(
                ResponseDistribution(d, *PopulationModel::Create({0.2, 0.3, 0.5}))
                    .status()),
            "DIMENSION_MISMATCH");
}

}  // namespace
}  // namespace rrkit
