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

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "rrkit/status.h"

namespace rrkit {

absl::StatusOr<SquareMatrix> RevealingProbabilities(
    const Device& device, const PopulationModel& population) {
  const std::size_t m = device.m();
  if (population.size() != m) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        absl::StrCat("population has ", population.size(),
                                     " entries but the device has m = ", m));
  }
  const double p = device.p();
  const double forced = device.forced_card_probability();
  SquareMatrix posterior(m);
  for (std::size_t j = 0; j < m; ++j) {
    // lambda_j >= (1 - p) / m > 0 because p < 1.
    const double lambda_j = p * population[j] + forced;
    for (std::size_t i = 0; i < m; ++i) {
      const double likelihood = (i == j ? p : 0.0) + forced;
      posterior(i, j) = likelihood * population[i] / lambda_j;
    }
  }
  return posterior;
}

absl::StatusOr<AlphaResult> AlphaMeasure(const Device& device,
                                         const PopulationModel& population) {
  RRKIT_ASSIGN_OR_RETURN(SquareMatrix posterior,
                         RevealingProbabilities(device, population));
  const std::size_t m = device.m();
  AlphaResult result;
  result.alpha_ij = SquareMatrix(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double a = std::abs(posterior(i, j) - population[i]);
      result.alpha_ij(i, j) = a;
      result.alpha = std::max(result.alpha, a);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (result.alpha - result.alpha_ij(i, j) <= kExtremumTieTolerance) {
        result.argmax.push_back({i, j});
      }
    }
  }

  const double offset = (1.0 - device.p()) /
                        (static_cast<double>(m) * device.p());
  for (std::size_t j = 0; j < m; ++j) {
    const double pj = population[j];
    result.alpha_reduced =
        std::max(result.alpha_reduced, pj * (1.0 - pj) / (pj + offset));
  }
  if (std::abs(result.alpha - result.alpha_reduced) > kExtremumTieTolerance) {
    return MakeError(absl::StatusCode::kInternal, ErrorCode::kInternal,
                     absl::StrCat("alpha = ", result.alpha,
                                  " disagrees with its diagonal reduction ",
                                  result.alpha_reduced));
  }
  return result;
}

absl::StatusOr<BetaResult> BetaMeasure(
    const Device& device, const PopulationModel& population,
    std::span<const std::size_t> nonstigmatizing) {
  const std::size_t m = device.m();
  if (nonstigmatizing.empty() || nonstigmatizing.size() >= m) {
    return InvalidInput(
        ErrorCode::kBadNonstigmatizingSet,
        absl::StrCat("need 1 <= t < m non-stigmatizing values, got t = ",
                     nonstigmatizing.size(), " with m = ", m));
  }
  std::vector<bool> in_set(m, false);
  for (std::size_t idx : nonstigmatizing) {
    if (idx >= m) {
      return InvalidInput(ErrorCode::kIndexOutOfRange,
                          absl::StrCat("non-stigmatizing index ", idx,
                                       " is outside [0, ", m, ")"));
    }
    if (in_set[idx]) {
      return InvalidInput(ErrorCode::kBadNonstigmatizingSet,
                          "non-stigmatizing indices contain duplicates");
    }
    in_set[idx] = true;
  }
  RRKIT_ASSIGN_OR_RETURN(SquareMatrix posterior,
                         RevealingProbabilities(device, population));

  BetaResult result;
  result.beta = std::numeric_limits<double>::infinity();
  result.nonstigmatizing_mass.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double mass = 0.0;
    for (std::size_t i : nonstigmatizing) mass += posterior(i, j);
    result.nonstigmatizing_mass[j] = mass;
    result.beta = std::min(result.beta, mass);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (result.nonstigmatizing_mass[j] - result.beta <= kExtremumTieTolerance) {
      result.argmin.push_back(j);
    }
  }
  return result;
}

double GuaranteedAlphaBound(const Device& device) {
  const double k = 4.0 * (1.0 - device.p()) /
                   (static_cast<double>(device.m()) * device.p());
  // Roots of xi^2 - (2 + k) xi + 1 = 0 multiply to 1; taking the reciprocal
  // of the large root avoids cancellation when k is small.
  const double b = 2.0 + k;
  return 2.0 / (b + std::sqrt(k * (4.0 + k)));
}

absl::StatusOr<double> GuaranteedBetaBound(const Device& device, double c) {
  if (!(c > 0.0 && c < 1.0)) {
    return InvalidInput(ErrorCode::kCOutOfRange,
                        absl::StrCat("c = ", c, " must lie in (0, 1)"));
  }
  const double p = device.p();
  const double m = static_cast<double>(device.m());
  return c / (1.0 + m * p * (1.0 - c) / (1.0 - p));
}

absl::StatusOr<PrivacyReport> AssessPrivacy(const Device& device,
                                            const PopulationModel& population,
                                            const PrivacyPolicy& policy) {
  PrivacyReport report;
  report.mode = policy.mode();
  RRKIT_ASSIGN_OR_RETURN(report.posterior,
                         RevealingProbabilities(device, population));
  switch (policy.mode()) {
    case PrivacyMode::kAllStigmatizing: {
      RRKIT_ASSIGN_OR_RETURN(report.alpha, AlphaMeasure(device, population));
      report.guaranteed_bound = GuaranteedAlphaBound(device);
      break;
    }
    case PrivacyMode::kNonStigmatizingSubset: {
      RRKIT_ASSIGN_OR_RETURN(
          report.beta,
          BetaMeasure(device, population, policy.nonstigmatizing()));
      RRKIT_ASSIGN_OR_RETURN(report.guaranteed_bound,
                             GuaranteedBetaBound(device, policy.c()));
      break;
    }
  }
  return report;
}

}  // namespace rrkit
