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

// Domain types shared by every rrkit module. Each type validates its
// invariants in a static factory and is immutable afterwards, so instances
// can be shared freely between threads.

#ifndef RRKIT_MODEL_H_
#define RRKIT_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace rrkit {

// Tolerance on the total mass accepted by PopulationModel::Create.
inline constexpr double kPiSumTolerance = 1e-9;

// The m known values of the sensitive variable together with the partition
// into stigmatizing and non-stigmatizing values.
class SupportSpec {
 public:
  // Requires m >= 2 finite, pairwise distinct values and at least one
  // stigmatizing value. `stigmatizing` must have the same length as `values`.
  static absl::StatusOr<SupportSpec> Create(std::vector<double> values,
                                            std::vector<bool> stigmatizing);

  // Convenience: every value stigmatizing.
  static absl::StatusOr<SupportSpec> AllStigmatizing(
      std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double value(std::size_t i) const { return values_[i]; }
  bool is_stigmatizing(std::size_t i) const { return stigmatizing_[i]; }
  const std::vector<bool>& stigmatizing() const { return stigmatizing_; }

  // Indices of the non-stigmatizing values in increasing order (t of them).
  std::vector<std::size_t> NonStigmatizingIndices() const;
  bool all_stigmatizing() const;

  // Unweighted average of the support values.
  double ValueAverage() const;

 private:
  SupportSpec(std::vector<double> values, std::vector<bool> stigmatizing)
      : values_(std::move(values)), stigmatizing_(std::move(stigmatizing)) {}

  std::vector<double> values_;
  std::vector<bool> stigmatizing_;
};

// Distribution of the sensitive variable over the support (a simplex point).
class PopulationModel {
 public:
  // Accepts non-negative entries whose sum lies within kPiSumTolerance of 1
  // and renormalizes them exactly; rejects anything else.
  static absl::StatusOr<PopulationModel> Create(std::vector<double> pi);

  // Accepts any non-negative weights with a positive finite sum and
  // normalizes them.
  static absl::StatusOr<PopulationModel> FromWeights(
      std::vector<double> weights);

  std::size_t size() const { return pi_.size(); }
  std::span<const double> pi() const { return pi_; }
  double operator[](std::size_t i) const { return pi_[i]; }

 private:
  explicit PopulationModel(std::vector<double> pi) : pi_(std::move(pi)) {}

  std::vector<double> pi_;
};

// Population mean of X. Sizes must match.
double PopulationMean(const SupportSpec& support,
                      const PopulationModel& population);
// Population variance of X. Sizes must match.
double PopulationVariance(const SupportSpec& support,
                          const PopulationModel& population);

// The (m+1)-card randomization device: with probability p the respondent
// reports the truth, otherwise one of the m values chosen uniformly.
class Device {
 public:
  // Requires 0 < p < 1 and m >= 2.
  static absl::StatusOr<Device> Create(double p, std::size_t m);

  double p() const { return p_; }
  std::size_t m() const { return m_; }

  // Probability (1-p)/m of each forced-report card.
  double forced_card_probability() const {
    return (1.0 - p_) / static_cast<double>(m_);
  }

 private:
  Device(double p, std::size_t m) : p_(p), m_(m) {}

  double p_;
  std::size_t m_;
};

enum class PrivacyMode {
  kAllStigmatizing,
  kNonStigmatizingSubset,
};

std::string_view PrivacyModeName(PrivacyMode mode);

// Stipulated privacy level. In all-stigmatizing mode the requirement is
// alpha <= xi; in subset mode it is beta >= xi for every population whose
// total non-stigmatizing mass is at least c.
class PrivacyPolicy {
 public:
  static absl::StatusOr<PrivacyPolicy> AllStigmatizing(double xi);
  // Requires 0 < xi < c < 1 and a non-empty, duplicate-free index set.
  static absl::StatusOr<PrivacyPolicy> NonStigmatizingSubset(
      double xi, double c, std::vector<std::size_t> nonstigmatizing);

  PrivacyMode mode() const { return mode_; }
  double xi() const { return xi_; }
  // Only meaningful in subset mode; 0 otherwise.
  double c() const { return c_; }
  // Sorted ascending; empty in all-stigmatizing mode.
  std::span<const std::size_t> nonstigmatizing() const {
    return nonstigmatizing_;
  }

 private:
  PrivacyPolicy(PrivacyMode mode, double xi, double c,
                std::vector<std::size_t> nonstigmatizing)
      : mode_(mode),
        xi_(xi),
        c_(c),
        nonstigmatizing_(std::move(nonstigmatizing)) {}

  PrivacyMode mode_;
  double xi_;
  double c_;
  std::vector<std::size_t> nonstigmatizing_;
};

// Checks that the policy's mode agrees with the support's stigma partition:
// all-stigmatizing mode iff every value is stigmatizing, and in subset mode
// the index set equals the support's non-stigmatizing values (1 <= t < m).
absl::StatusOr<PrivacyPolicy> ValidatePolicy(const PrivacyPolicy& policy,
                                             const SupportSpec& support);

// Counts of randomized responses per support value.
class ResponseSample {
 public:
  // Requires non-negative counts with a positive total.
  static absl::StatusOr<ResponseSample> Create(
      std::vector<std::int64_t> counts);
  // As above, additionally requiring the counts to sum to `n`.
  static absl::StatusOr<ResponseSample> Create(
      std::vector<std::int64_t> counts, std::int64_t n);

  std::size_t size() const { return counts_.size(); }
  std::int64_t n() const { return n_; }
  std::span<const std::int64_t> counts() const { return counts_; }

  // Sample proportion w_i = counts_i / n.
  double proportion(std::size_t i) const {
    return static_cast<double>(counts_[i]) / static_cast<double>(n_);
  }
  std::vector<double> Proportions() const;

 private:
  ResponseSample(std::vector<std::int64_t> counts, std::int64_t n)
      : counts_(std::move(counts)), n_(n) {}

  std::vector<std::int64_t> counts_;
  std::int64_t n_;
};

inline constexpr char kFlagRawOutOfRange[] = "RAW_OUT_OF_RANGE";

struct EstimateReport {
  double mu_hat = 0.0;
  std::vector<double> pi_hat_raw;
  // Raw estimates clamped to [0, 1] and renormalized onto the simplex.
  std::vector<double> pi_hat_truncated;
  double var_mu_plugin = 0.0;
  std::vector<std::string> flags;
};

}  // namespace rrkit

#endif  // RRKIT_MODEL_H_
