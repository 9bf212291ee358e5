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

// Brute-force reference computations.
//
// Everything here is derived from first principles (enumerating the device's
// cards, the joint distribution of true value and response, or every
// multinomial outcome) and depends only on the core model types. Nothing in
// this file may call into device, estimation or privacy; those modules are
// what the oracles check.

#ifndef RRKIT_ORACLE_H_
#define RRKIT_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "rrkit/matrix.h"
#include "rrkit/model.h"

namespace rrkit::oracle {

// Cap on the number of outcomes a multinomial enumeration may visit.
inline constexpr std::uint64_t kMaxEnumerationOutcomes = 100000;

// Joint table Prob(X = x_i, R = x_j), built by summing over the m + 1 cards
// in the box: the truth card (weight p) and one forced card per value
// (weight (1 - p) / m each).
absl::StatusOr<SquareMatrix> JointTable(const Device& device,
                                        const PopulationModel& population);

// Posterior Prob(X = x_i | R = x_j) obtained by normalizing each column of
// the joint table.
absl::StatusOr<SquareMatrix> BayesPosterior(const Device& device,
                                            const PopulationModel& population);

// Response marginal Prob(R = x_j), as column sums of the joint table.
absl::StatusOr<std::vector<double>> ResponseMarginal(
    const Device& device, const PopulationModel& population);

// max_{i,j} |posterior(i, j) - pi_i| from the Bayes posterior.
absl::StatusOr<double> BruteForceAlpha(const Device& device,
                                       const PopulationModel& population);

// min_j sum_{i in S} posterior(i, j) from the Bayes posterior.
absl::StatusOr<double> BruteForceBeta(
    const Device& device, const PopulationModel& population,
    std::span<const std::size_t> nonstigmatizing);

// Number of multinomial outcomes with n trials over m categories,
// C(n + m - 1, m - 1). Saturates at UINT64_MAX.
std::uint64_t MultinomialOutcomeCount(std::int64_t n, std::size_t m);

// Calls `visit(counts, probability)` for every count vector summing to n,
// in lexicographic order. Fails with ENUMERATION_TOO_LARGE when
// (n + 1)^(m - 1) exceeds kMaxEnumerationOutcomes.
absl::Status EnumerateMultinomial(
    std::span<const double> probabilities, std::int64_t n,
    const std::function<void(std::span<const std::int64_t>, double)>& visit);

// Var(mu_hat) = Var(sum_i x_i w_i) / p^2 from the multinomial covariance
// identity: (1 / (n p^2)) { sum_i x_i^2 lambda_i - (sum_i x_i lambda_i)^2 }
// with lambda from ResponseMarginal.
absl::StatusOr<double> MultinomialVariance(const Device& device,
                                           const SupportSpec& support,
                                           const PopulationModel& population,
                                           std::int64_t n);

// Same quantity by enumerating every response-count outcome.
absl::StatusOr<double> EnumeratedVariance(const Device& device,
                                          const SupportSpec& support,
                                          const PopulationModel& population,
                                          std::int64_t n);

// (1 / (n p^2)) sum_i lambda_i (1 - lambda_i): total variance of the
// proportion estimators.
absl::StatusOr<double> ProportionVarianceSum(const Device& device,
                                             const PopulationModel& population,
                                             std::int64_t n);

enum class Extremum { kMax, kMin };

// Requires sum_{i in indices} pi_i >= c.
struct MassConstraint {
  std::vector<std::size_t> indices;
  double c = 0.0;
};

struct GridSearchOptions {
  // Must divide 1 evenly and lie in (0, 0.5].
  double step = 0.05;
  std::optional<MassConstraint> constraint;
  // Always evaluated in addition to the grid when they satisfy the
  // constraint.
  std::vector<std::vector<double>> extra_points;
};

struct GridSearchResult {
  double value = 0.0;
  std::vector<double> witness;
  std::size_t points_evaluated = 0;
};

using PopulationObjective = std::function<double(const PopulationModel&)>;

// Enumerates every simplex point with coordinates on the `step` lattice (and
// the extra points) and returns the extremal objective value. The first
// extremal point in enumeration order is the witness.
absl::StatusOr<GridSearchResult> SimplexGridSearch(
    const PopulationObjective& objective, Extremum extremum, std::size_t m,
    const GridSearchOptions& options);

// The population ((1 - xi) / 2, (1 + xi) / 2, 0, ..., 0) at which the alpha
// guarantee is tight.
std::vector<double> AlphaAdversarialPopulation(std::size_t m, double xi);

// Mass c on the first non-stigmatizing index and 1 - c on the first
// stigmatizing index: the population at which the beta guarantee is tight.
std::vector<double> BetaAdversarialPopulation(
    std::size_t m, double c, std::span<const std::size_t> nonstigmatizing);

}  // namespace rrkit::oracle

#endif  // RRKIT_ORACLE_H_
