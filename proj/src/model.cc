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

#include "rrkit/model.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

absl::StatusOr<std::vector<double>> NormalizeNonNegative(
    std::vector<double> weights) {
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i])) {
      return InvalidInput(ErrorCode::kNonFiniteValue,
                          absl::StrCat("pi[", i, "] is not finite"));
    }
    if (weights[i] < 0.0) {
      return InvalidInput(ErrorCode::kNegativeProbability,
                          absl::StrCat("pi[", i, "] = ", weights[i],
                                       " is negative"));
    }
    sum += weights[i];
  }
  if (!(sum > 0.0)) {
    return InvalidInput(ErrorCode::kPiNotNormalized,
                        "population weights sum to zero");
  }
  for (double& w : weights) w /= sum;
  return weights;
}

}  // namespace

absl::StatusOr<SupportSpec> SupportSpec::Create(std::vector<double> values,
                                                std::vector<bool> stigmatizing) {
  if (values.size() < 2) {
    return InvalidInput(ErrorCode::kSupportTooSmall,
                        absl::StrCat("support needs at least 2 values, got ",
                                     values.size()));
  }
  if (stigmatizing.size() != values.size()) {
    return InvalidInput(
        ErrorCode::kStigmaLengthMismatch,
        absl::StrCat("stigma flags have length ", stigmatizing.size(),
                     " but there are ", values.size(), " values"));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      return InvalidInput(ErrorCode::kNonFiniteValue,
                          absl::StrCat("value ", i, " is not finite"));
    }
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return InvalidInput(ErrorCode::kDuplicateValues,
                        "support values must be pairwise distinct");
  }
  if (std::none_of(stigmatizing.begin(), stigmatizing.end(),
                   [](bool s) { return s; })) {
    return InvalidInput(ErrorCode::kNoStigmatizingValue,
                        "at least one value must be stigmatizing");
  }
  return SupportSpec(std::move(values), std::move(stigmatizing));
}

absl::StatusOr<SupportSpec> SupportSpec::AllStigmatizing(
    std::vector<double> values) {
  std::vector<bool> flags(values.size(), true);
  return Create(std::move(values), std::move(flags));
}

std::vector<std::size_t> SupportSpec::NonStigmatizingIndices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < stigmatizing_.size(); ++i) {
    if (!stigmatizing_[i]) out.push_back(i);
  }
  return out;
}

bool SupportSpec::all_stigmatizing() const {
  return std::all_of(stigmatizing_.begin(), stigmatizing_.end(),
                     [](bool s) { return s; });
}

double SupportSpec::ValueAverage() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

absl::StatusOr<PopulationModel> PopulationModel::Create(std::vector<double> pi) {
  if (pi.size() < 2) {
    return InvalidInput(ErrorCode::kSupportTooSmall,
                        "population needs at least 2 probabilities");
  }
  double sum = 0.0;
  for (double v : pi) sum += v;
  if (std::isfinite(sum) && std::abs(sum - 1.0) > kPiSumTolerance) {
    return InvalidInput(ErrorCode::kPiNotNormalized,
                        absl::StrCat("pi sums to ", sum, ", not 1"));
  }
  RRKIT_ASSIGN_OR_RETURN(std::vector<double> normalized,
                         NormalizeNonNegative(std::move(pi)));
  return PopulationModel(std::move(normalized));
}

absl::StatusOr<PopulationModel> PopulationModel::FromWeights(
    std::vector<double> weights) {
  if (weights.size() < 2) {
    return InvalidInput(ErrorCode::kSupportTooSmall,
                        "population needs at least 2 weights");
  }
  RRKIT_ASSIGN_OR_RETURN(std::vector<double> normalized,
                         NormalizeNonNegative(std::move(weights)));
  return PopulationModel(std::move(normalized));
}

double PopulationMean(const SupportSpec& support,
                      const PopulationModel& population) {
  assert(support.size() == population.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    mean += support.value(i) * population[i];
  }
  return mean;
}

double PopulationVariance(const SupportSpec& support,
                          const PopulationModel& population) {
  const double mean = PopulationMean(support, population);
  double var = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double d = support.value(i) - mean;
    var += d * d * population[i];
  }
  return var;
}

absl::StatusOr<Device> Device::Create(double p, std::size_t m) {
  if (!(p > 0.0 && p < 1.0)) {
    return InvalidInput(ErrorCode::kPOutOfRange,
                        absl::StrCat("device parameter p = ", p,
                                     " must lie in (0, 1)"));
  }
  if (m < 2) {
    return InvalidInput(ErrorCode::kSupportTooSmall,
                        absl::StrCat("device needs m >= 2, got ", m));
  }
  return Device(p, m);
}

std::string_view PrivacyModeName(PrivacyMode mode) {
  switch (mode) {
    case PrivacyMode::kAllStigmatizing:
      return "all_stigmatizing";
    case PrivacyMode::kNonStigmatizingSubset:
      return "nonstigmatizing_subset";
  }
  return "unknown";
}

absl::StatusOr<PrivacyPolicy> PrivacyPolicy::AllStigmatizing(double xi) {
  if (!(xi > 0.0 && xi < 1.0)) {
    return InvalidInput(ErrorCode::kXiOutOfRange,
                        absl::StrCat("xi = ", xi, " must lie in (0, 1)"));
  }
  return PrivacyPolicy(PrivacyMode::kAllStigmatizing, xi, 0.0, {});
}

absl::StatusOr<PrivacyPolicy> PrivacyPolicy::NonStigmatizingSubset(
    double xi, double c, std::vector<std::size_t> nonstigmatizing) {
  if (!(xi > 0.0 && xi < 1.0)) {
    return InvalidInput(ErrorCode::kXiOutOfRange,
                        absl::StrCat("xi = ", xi, " must lie in (0, 1)"));
  }
  if (!(c > 0.0 && c < 1.0)) {
    return InvalidInput(ErrorCode::kCOutOfRange,
                        absl::StrCat("c = ", c, " must lie in (0, 1)"));
  }
  if (xi >= c) {
    return InvalidInput(ErrorCode::kXiGeC,
                        absl::StrCat("xi = ", xi, " must be below c = ", c));
  }
  if (nonstigmatizing.empty()) {
    return InvalidInput(ErrorCode::kBadNonstigmatizingSet,
                        "subset mode needs at least one non-stigmatizing "
                        "value");
  }
  std::sort(nonstigmatizing.begin(), nonstigmatizing.end());
  if (std::adjacent_find(nonstigmatizing.begin(), nonstigmatizing.end()) !=
      nonstigmatizing.end()) {
    return InvalidInput(ErrorCode::kBadNonstigmatizingSet,
                        "non-stigmatizing indices contain duplicates");
  }
  return PrivacyPolicy(PrivacyMode::kNonStigmatizingSubset, xi, c,
                       std::move(nonstigmatizing));
}

absl::StatusOr<PrivacyPolicy> ValidatePolicy(const PrivacyPolicy& policy,
                                             const SupportSpec& support) {
  switch (policy.mode()) {
    case PrivacyMode::kAllStigmatizing:
      if (!support.all_stigmatizing()) {
        return InvalidInput(ErrorCode::kModeMismatch,
                            "all_stigmatizing policy but the support has "
                            "non-stigmatizing values");
      }
      return policy;
    case PrivacyMode::kNonStigmatizingSubset: {
      const std::vector<std::size_t> expected =
          support.NonStigmatizingIndices();
      if (expected.empty()) {
        return InvalidInput(ErrorCode::kModeMismatch,
                            "nonstigmatizing_subset policy but every support "
                            "value is stigmatizing");
      }
      const auto given = policy.nonstigmatizing();
      if (!std::equal(given.begin(), given.end(), expected.begin(),
                      expected.end())) {
        return InvalidInput(ErrorCode::kBadNonstigmatizingSet,
                            "policy non-stigmatizing indices do not match "
                            "the support's stigma flags");
      }
      return policy;
    }
  }
  return MakeError(absl::StatusCode::kInternal, ErrorCode::kInternal,
                   "unknown privacy mode");
}

absl::StatusOr<ResponseSample> ResponseSample::Create(
    std::vector<std::int64_t> counts) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) {
      return InvalidInput(ErrorCode::kNegativeCount,
                          absl::StrCat("count ", i, " is negative"));
    }
    n += counts[i];
  }
  if (counts.size() < 2) {
    return InvalidInput(ErrorCode::kSupportTooSmall,
                        "a sample needs at least 2 response categories");
  }
  if (n < 1) {
    return InvalidInput(ErrorCode::kEmptySample, "sample size must be >= 1");
  }
  return ResponseSample(std::move(counts), n);
}

absl::StatusOr<ResponseSample> ResponseSample::Create(
    std::vector<std::int64_t> counts, std::int64_t n) {
  RRKIT_ASSIGN_OR_RETURN(ResponseSample sample, Create(std::move(counts)));
  if (sample.n() != n) {
    return InvalidInput(ErrorCode::kCountSumMismatch,
                        absl::StrCat("counts sum to ", sample.n(),
                                     " but n = ", n));
  }
  return sample;
}

std::vector<double> ResponseSample::Proportions() const {
  std::vector<double> w(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) w[i] = proportion(i);
  return w;
}

}  // namespace rrkit
