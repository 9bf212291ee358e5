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

// Monte Carlo harness: sample true values i.i.d. from the population (the
// with-replacement sampling model), pass each through the device, estimate,
// and aggregate across replicates.
//
// Replicate r always uses RandomStream(seed, r), and replicate results are
// reduced in index order, so the summary is bit-identical for any number of
// worker threads.

#ifndef RRKIT_SIMULATION_H_
#define RRKIT_SIMULATION_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "rrkit/model.h"

namespace rrkit {

struct SimulationConfig {
  SupportSpec support;
  PopulationModel population;
  Device device;
  std::int64_t n;
  std::int64_t replicates;
  std::uint64_t seed;
  // Keep per-replicate estimates in the summary.
  bool keep_replicates = false;
};

// Checks n >= 1, replicates >= 1 and that all sizes agree.
absl::Status ValidateConfig(const SimulationConfig& config);

// Streaming mean and central moments up to the fourth (one pass, numerically
// stable update).
class MomentAccumulator {
 public:
  void Add(double x);

  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; requires count() >= 2.
  double SampleVariance() const;
  // Fourth central moment with divisor count().
  double FourthCentralMoment() const;

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

// One simulated survey of config.n respondents for replicate
// `replicate_index`. Each respondent consumes two variates: one for the true
// value, one for the device.
absl::StatusOr<ResponseSample> SimulateSurvey(const SimulationConfig& config,
                                              std::int64_t replicate_index);

struct ReplicateRecord {
  std::int64_t replicate = 0;
  double mu_hat = 0.0;
  std::vector<double> pi_hat_raw;
};

struct SimulationSummary {
  std::int64_t replicates = 0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double p = 0.0;
  double mu_true = 0.0;
  double mean_mu_hat = 0.0;
  double theoretical_var = 0.0;
  // Absent when replicates == 1.
  std::optional<double> empirical_var;
  std::optional<double> variance_ratio;
  std::optional<double> mc_se_mean;
  std::optional<double> mc_se_var;
  std::vector<ReplicateRecord> records;
};

// Runs every replicate on up to `threads` workers (0 means one per hardware
// thread). The result does not depend on `threads`.
absl::StatusOr<SimulationSummary> RunReplicates(const SimulationConfig& config,
                                                int threads = 1);

}  // namespace rrkit

#endif  // RRKIT_SIMULATION_H_
