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

// Respondent privacy measures for the randomization device.
//
// The revealing probability Prob(X = x_i | R = x_j) is what an interviewer
// can infer about a respondent's true value after seeing response x_j. Two
// jeopardy measures are built on it:
//
//   alpha = max_{i,j} |Prob(X = x_i | R = x_j) - pi_i|   (smaller is better)
//
// for surveys where every value is stigmatizing, and
//
//   beta = min_j Prob(X in S | R = x_j)                  (larger is better)
//
// where S is the set of non-stigmatizing values. The guaranteed bounds are
// the worst case of each measure over all admissible populations for a
// fixed device parameter.

#ifndef RRKIT_PRIVACY_H_
#define RRKIT_PRIVACY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "rrkit/matrix.h"
#include "rrkit/model.h"

namespace rrkit {

// Entries within this distance of an extremum are reported as attaining it.
inline constexpr double kExtremumTieTolerance = 1e-12;

// Entry (i, j) is Prob(X = x_i | R = x_j); each column sums to 1.
absl::StatusOr<SquareMatrix> RevealingProbabilities(
    const Device& device, const PopulationModel& population);

struct IndexPair {
  std::size_t true_index;
  std::size_t response;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

struct AlphaResult {
  double alpha = 0.0;
  // Every (i, j) whose alpha_ij ties the maximum, in row-major order.
  std::vector<IndexPair> argmax;
  // alpha_ij = |Prob(X = x_i | R = x_j) - pi_i|.
  SquareMatrix alpha_ij;
  // max_j pi_j (1 - pi_j) / (pi_j + (1 - p) / (m p)); equal to alpha.
  double alpha_reduced = 0.0;
};

// Fails with INTERNAL if the full maximum and the diagonal reduction disagree
// by more than kExtremumTieTolerance.
absl::StatusOr<AlphaResult> AlphaMeasure(const Device& device,
                                         const PopulationModel& population);

struct BetaResult {
  double beta = 0.0;
  // Response indices j attaining the minimum, ascending.
  std::vector<std::size_t> argmin;
  // Prob(X in S | R = x_j) for each response j.
  std::vector<double> nonstigmatizing_mass;
};

// `nonstigmatizing` must hold 1 <= t < m distinct in-range indices.
absl::StatusOr<BetaResult> BetaMeasure(
    const Device& device, const PopulationModel& population,
    std::span<const std::size_t> nonstigmatizing);

// Smallest xi such that alpha <= xi holds for every population, i.e. the
// root in (0, 1) of (1 - xi)^2 = k xi with k = 4 (1 - p) / (m p).
double GuaranteedAlphaBound(const Device& device);

// Largest xi such that beta >= xi for every population whose non-stigmatizing
// mass is at least c: c / (1 + m p (1 - c) / (1 - p)). Requires 0 < c < 1.
absl::StatusOr<double> GuaranteedBetaBound(const Device& device, double c);

struct PrivacyReport {
  PrivacyMode mode = PrivacyMode::kAllStigmatizing;
  // Set in all-stigmatizing mode.
  std::optional<AlphaResult> alpha;
  // Set in subset mode.
  std::optional<BetaResult> beta;
  SquareMatrix posterior;
  double guaranteed_bound = 0.0;
};

// Evaluates the measure selected by `policy` (which must already be
// validated against the support the population lives on).
absl::StatusOr<PrivacyReport> AssessPrivacy(const Device& device,
                                            const PopulationModel& population,
                                            const PrivacyPolicy& policy);

}  // namespace rrkit

#endif  // RRKIT_PRIVACY_H_
