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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "rrkit/status.h"

namespace rrkit::oracle {
namespace {

absl::Status CheckPopulation(const Device& device,
                             const PopulationModel& population) {
  if (population.size() != device.m()) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        absl::StrCat("population has ", population.size(),
                                     " entries but the device has m = ",
                                     device.m()));
  }
  return absl::OkStatus();
}

// Exact in double for the small arguments used here; otherwise accurate to a
// few ulps.
double Binomial(std::int64_t n, std::int64_t k) {
  k = std::min(k, n - k);
  double out = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return out;
}

void EnumerateRecursive(
    std::span<const double> probabilities, std::size_t category,
    std::int64_t remaining, double probability,
    std::vector<std::int64_t>& counts,
    const std::function<void(std::span<const std::int64_t>, double)>& visit) {
  const std::size_t m = probabilities.size();
  if (category + 1 == m) {
    counts[category] = remaining;
    visit(counts, probability * std::pow(probabilities[category],
                                         static_cast<double>(remaining)));
    return;
  }
  for (std::int64_t c = 0; c <= remaining; ++c) {
    counts[category] = c;
    const double factor = Binomial(remaining, c) *
                          std::pow(probabilities[category],
                                   static_cast<double>(c));
    EnumerateRecursive(probabilities, category + 1, remaining - c,
                       probability * factor, counts, visit);
  }
}

void CompositionsRecursive(std::size_t part, std::int64_t remaining,
                           std::vector<std::int64_t>& parts,
                           const std::function<void()>& visit) {
  if (part + 1 == parts.size()) {
    parts[part] = remaining;
    visit();
    return;
  }
  for (std::int64_t k = 0; k <= remaining; ++k) {
    parts[part] = k;
    CompositionsRecursive(part + 1, remaining - k, parts, visit);
  }
}

bool SatisfiesConstraint(std::span<const double> pi,
                         const std::optional<MassConstraint>& constraint) {
  if (!constraint.has_value()) return true;
  double mass = 0.0;
  for (std::size_t i : constraint->indices) mass += pi[i];
  return mass >= constraint->c - 1e-12;
}

}  // namespace

absl::StatusOr<SquareMatrix> JointTable(const Device& device,
                                        const PopulationModel& population) {
  RRKIT_RETURN_IF_ERROR(CheckPopulation(device, population));
  const std::size_t m = device.m();
  const double truth_card = device.p();
  const double each_forced_card =
      (1.0 - device.p()) / static_cast<double>(m);
  SquareMatrix joint(m);
  for (std::size_t i = 0; i < m; ++i) {
    // Truth card: the response equals the true value.
    joint(i, i) += population[i] * truth_card;
    // Forced card k: the response is x_k whatever the true value.
    for (std::size_t k = 0; k < m; ++k) {
      joint(i, k) += population[i] * each_forced_card;
    }
  }
  return joint;
}

absl::StatusOr<SquareMatrix> BayesPosterior(
    const Device& device, const PopulationModel& population) {
  RRKIT_ASSIGN_OR_RETURN(SquareMatrix joint, JointTable(device, population));
  const std::size_t m = joint.size();
  SquareMatrix posterior(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double column = joint.ColumnSum(j);
    for (std::size_t i = 0; i < m; ++i) {
      posterior(i, j) = joint(i, j) / column;
    }
  }
  return posterior;
}

absl::StatusOr<std::vector<double>> ResponseMarginal(
    const Device& device, const PopulationModel& population) {
  RRKIT_ASSIGN_OR_RETURN(SquareMatrix joint, JointTable(device, population));
  std::vector<double> marginal(joint.size());
  for (std::size_t j = 0; j < joint.size(); ++j) {
    marginal[j] = joint.ColumnSum(j);
  }
  return marginal;
}

absl::StatusOr<double> BruteForceAlpha(const Device& device,
                                       const PopulationModel& population) {
  RRKIT_ASSIGN_OR_RETURN(SquareMatrix posterior,
                         BayesPosterior(device, population));
  double alpha = 0.0;
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    for (std::size_t j = 0; j < posterior.size(); ++j) {
      alpha = std::max(alpha, std::abs(posterior(i, j) - population[i]));
    }
  }
  return alpha;
}

absl::StatusOr<double> BruteForceBeta(
    const Device& device, const PopulationModel& population,
    std::span<const std::size_t> nonstigmatizing) {
  RRKIT_ASSIGN_OR_RETURN(SquareMatrix posterior,
                         BayesPosterior(device, population));
  for (std::size_t idx : nonstigmatizing) {
    if (idx >= posterior.size()) {
      return InvalidInput(ErrorCode::kIndexOutOfRange,
                          absl::StrCat("index ", idx, " out of range"));
    }
  }
  double beta = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < posterior.size(); ++j) {
    double mass = 0.0;
    for (std::size_t i : nonstigmatizing) mass += posterior(i, j);
    beta = std::min(beta, mass);
  }
  return beta;
}

std::uint64_t MultinomialOutcomeCount(std::int64_t n, std::size_t m) {
  const double count = Binomial(n + static_cast<std::int64_t>(m) - 1,
                                static_cast<std::int64_t>(m) - 1);
  if (count >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::llround(count));
}

absl::Status EnumerateMultinomial(
    std::span<const double> probabilities, std::int64_t n,
    const std::function<void(std::span<const std::int64_t>, double)>& visit) {
  if (probabilities.empty()) {
    return InvalidInput(ErrorCode::kSupportTooSmall, "no categories");
  }
  if (n < 0) {
    return InvalidInput(ErrorCode::kBadSampleSize, "n must be >= 0");
  }
  const double bound =
      std::pow(static_cast<double>(n + 1),
               static_cast<double>(probabilities.size() - 1));
  if (bound > static_cast<double>(kMaxEnumerationOutcomes)) {
    return InvalidInput(
        ErrorCode::kEnumerationTooLarge,
        absl::StrCat("(n + 1)^(m - 1) = ", bound, " exceeds the cap of ",
                     kMaxEnumerationOutcomes, " outcomes"));
  }
  std::vector<std::int64_t> counts(probabilities.size(), 0);
  EnumerateRecursive(probabilities, 0, n, 1.0, counts, visit);
  return absl::OkStatus();
}

absl::StatusOr<double> MultinomialVariance(const Device& device,
                                           const SupportSpec& support,
                                           const PopulationModel& population,
                                           std::int64_t n) {
  if (n < 1) {
    return InvalidInput(ErrorCode::kBadSampleSize, "n must be >= 1");
  }
  if (support.size() != device.m()) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        "support size differs from the device's m");
  }
  RRKIT_ASSIGN_OR_RETURN(std::vector<double> lambda,
                         ResponseMarginal(device, population));
  double first = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    first += support.value(i) * lambda[i];
    second += support.value(i) * support.value(i) * lambda[i];
  }
  const double p = device.p();
  return (second - first * first) / (static_cast<double>(n) * p * p);
}

absl::StatusOr<double> EnumeratedVariance(const Device& device,
                                          const SupportSpec& support,
                                          const PopulationModel& population,
                                          std::int64_t n) {
  if (n < 1) {
    return InvalidInput(ErrorCode::kBadSampleSize, "n must be >= 1");
  }
  if (support.size() != device.m()) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        "support size differs from the device's m");
  }
  RRKIT_ASSIGN_OR_RETURN(std::vector<double> lambda,
                         ResponseMarginal(device, population));
  // Moments of T = sum_i x_i w_i over all outcomes. Centering on the first
  // pass mean keeps the second pass free of cancellation.
  std::vector<std::pair<double, double>> outcomes;  // (T, probability)
  const double inv_n = 1.0 / static_cast<double>(n);
  RRKIT_RETURN_IF_ERROR(EnumerateMultinomial(
      lambda, n, [&](std::span<const std::int64_t> counts, double prob) {
        double t = 0.0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
          t += support.value(i) * static_cast<double>(counts[i]) * inv_n;
        }
        outcomes.emplace_back(t, prob);
      }));
  double mean = 0.0;
  for (const auto& [t, prob] : outcomes) mean += prob * t;
  double var = 0.0;
  for (const auto& [t, prob] : outcomes) var += prob * (t - mean) * (t - mean);
  const double p = device.p();
  return var / (p * p);
}

absl::StatusOr<double> ProportionVarianceSum(const Device& device,
                                             const PopulationModel& population,
                                             std::int64_t n) {
  if (n < 1) {
    return InvalidInput(ErrorCode::kBadSampleSize, "n must be >= 1");
  }
  RRKIT_ASSIGN_OR_RETURN(std::vector<double> lambda,
                         ResponseMarginal(device, population));
  double sum = 0.0;
  for (double l : lambda) sum += l * (1.0 - l);
  const double p = device.p();
  return sum / (static_cast<double>(n) * p * p);
}

absl::StatusOr<GridSearchResult> SimplexGridSearch(
    const PopulationObjective& objective, Extremum extremum, std::size_t m,
    const GridSearchOptions& options) {
  if (m < 2) {
    return InvalidInput(ErrorCode::kSupportTooSmall, "m must be >= 2");
  }
  if (!(options.step > 0.0 && options.step <= 0.5)) {
    return InvalidInput(ErrorCode::kBadStep,
                        absl::StrCat("step = ", options.step,
                                     " must lie in (0, 0.5]"));
  }
  const double divisions_real = 1.0 / options.step;
  const std::int64_t divisions = std::llround(divisions_real);
  if (std::abs(divisions_real - static_cast<double>(divisions)) > 1e-9) {
    return InvalidInput(ErrorCode::kBadStep,
                        absl::StrCat("step = ", options.step,
                                     " does not divide 1 evenly"));
  }
  if (options.constraint.has_value()) {
    if (options.constraint->c > 1.0) {
      return InvalidInput(ErrorCode::kInfeasibleConstraint,
                          absl::StrCat("mass bound c = ", options.constraint->c,
                                       " exceeds 1"));
    }
    if (options.constraint->indices.empty()) {
      return InvalidInput(ErrorCode::kBadNonstigmatizingSet,
                          "mass constraint has no indices");
    }
    for (std::size_t idx : options.constraint->indices) {
      if (idx >= m) {
        return InvalidInput(ErrorCode::kIndexOutOfRange,
                            absl::StrCat("constraint index ", idx,
                                         " out of range"));
      }
    }
  }

  GridSearchResult result;
  bool have_best = false;
  auto consider = [&](const PopulationModel& population) {
    const double value = objective(population);
    ++result.points_evaluated;
    const bool better = !have_best ||
                        (extremum == Extremum::kMax ? value > result.value
                                                    : value < result.value);
    if (better) {
      have_best = true;
      result.value = value;
      result.witness.assign(population.pi().begin(), population.pi().end());
    }
  };

  std::vector<std::int64_t> parts(m, 0);
  std::vector<double> weights(m);
  absl::Status status;
  CompositionsRecursive(0, divisions, parts, [&] {
    for (std::size_t i = 0; i < m; ++i) {
      weights[i] = static_cast<double>(parts[i]);
    }
    absl::StatusOr<PopulationModel> population =
        PopulationModel::FromWeights(weights);
    if (!population.ok()) {
      status.Update(population.status());
      return;
    }
    if (!SatisfiesConstraint(population->pi(), options.constraint)) return;
    consider(*population);
  });
  RRKIT_RETURN_IF_ERROR(status);

  for (const std::vector<double>& point : options.extra_points) {
    if (point.size() != m) {
      return InvalidInput(ErrorCode::kDimensionMismatch,
                          "extra point has the wrong dimension");
    }
    RRKIT_ASSIGN_OR_RETURN(PopulationModel population,
                           PopulationModel::Create(point));
    if (!SatisfiesConstraint(population.pi(), options.constraint)) continue;
    consider(population);
  }
  if (!have_best) {
    return InvalidInput(ErrorCode::kInfeasibleConstraint,
                        "no grid point satisfies the mass constraint");
  }
  return result;
}

std::vector<double> AlphaAdversarialPopulation(std::size_t m, double xi) {
  std::vector<double> pi(m, 0.0);
  pi[0] = (1.0 - xi) / 2.0;
  pi[1] = (1.0 + xi) / 2.0;
  return pi;
}

std::vector<double> BetaAdversarialPopulation(
    std::size_t m, double c, std::span<const std::size_t> nonstigmatizing) {
  std::vector<double> pi(m, 0.0);
  std::vector<bool> in_set(m, false);
  for (std::size_t idx : nonstigmatizing) in_set[idx] = true;
  pi[nonstigmatizing.front()] = c;
  for (std::size_t i = 0; i < m; ++i) {
    if (!in_set[i]) {
      pi[i] = 1.0 - c;
      break;
    }
  }
  return pi;
}

}  // namespace rrkit::oracle
