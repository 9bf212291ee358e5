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

#include "rrkit/simulation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "rrkit/device.h"
#include "rrkit/estimation.h"
#include "rrkit/random.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

std::size_t SampleTrueIndex(std::span<const double> cumulative, double u) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative.begin());
  return std::min(idx, cumulative.size() - 1);
}

absl::StatusOr<ReplicateRecord> RunOne(const SimulationConfig& config,
                                       std::int64_t replicate) {
  RRKIT_ASSIGN_OR_RETURN(ResponseSample sample,
                         SimulateSurvey(config, replicate));
  RRKIT_ASSIGN_OR_RETURN(ProportionEstimates est,
                         EstimateProportions(sample, config.device));
  ReplicateRecord record;
  record.replicate = replicate;
  for (std::size_t i = 0; i < est.raw.size(); ++i) {
    record.mu_hat += config.support.value(i) * est.raw[i];
  }
  record.pi_hat_raw = std::move(est.raw);
  return record;
}

}  // namespace

absl::Status ValidateConfig(const SimulationConfig& config) {
  if (config.n < 1) {
    return InvalidInput(ErrorCode::kBadSampleSize,
                        absl::StrCat("n = ", config.n, " must be >= 1"));
  }
  if (config.replicates < 1) {
    return InvalidInput(ErrorCode::kBadReplicates,
                        absl::StrCat("replicates = ", config.replicates,
                                     " must be >= 1"));
  }
  const std::size_t m = config.support.size();
  if (config.population.size() != m || config.device.m() != m) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        "support, population and device sizes disagree");
  }
  return absl::OkStatus();
}

void MomentAccumulator::Add(double x) {
  const auto n1 = static_cast<double>(count_);
  ++count_;
  const auto n = static_cast<double>(count_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ -
         4.0 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term1;
}

double MomentAccumulator::SampleVariance() const {
  return m2_ / static_cast<double>(count_ - 1);
}

double MomentAccumulator::FourthCentralMoment() const {
  return m4_ / static_cast<double>(count_);
}

absl::StatusOr<ResponseSample> SimulateSurvey(const SimulationConfig& config,
                                              std::int64_t replicate_index) {
  RRKIT_RETURN_IF_ERROR(ValidateConfig(config));
  const std::size_t m = config.support.size();
  std::vector<double> cumulative(m);
  double running = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    running += config.population[i];
    cumulative[i] = running;
  }

  RandomStream stream(config.seed,
                      static_cast<std::uint64_t>(replicate_index));
  std::vector<std::int64_t> counts(m, 0);
  for (std::int64_t r = 0; r < config.n; ++r) {
    const std::size_t truth = SampleTrueIndex(cumulative, stream.NextUniform());
    RRKIT_ASSIGN_OR_RETURN(
        std::size_t response,
        DrawResponse(config.device, config.support, truth, stream));
    ++counts[response];
  }
  return ResponseSample::Create(std::move(counts), config.n);
}

absl::StatusOr<SimulationSummary> RunReplicates(const SimulationConfig& config,
                                                int threads) {
  RRKIT_RETURN_IF_ERROR(ValidateConfig(config));
  const auto total = static_cast<std::size_t>(config.replicates);
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  const auto workers = static_cast<std::size_t>(
      std::min<std::size_t>(static_cast<std::size_t>(threads), total));

  std::vector<ReplicateRecord> records(total);
  std::vector<absl::Status> statuses(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t r = next.fetch_add(1); r < total; r = next.fetch_add(1)) {
      absl::StatusOr<ReplicateRecord> rec =
          RunOne(config, static_cast<std::int64_t>(r));
      if (rec.ok()) {
        records[r] = *std::move(rec);
      } else {
        statuses[r] = rec.status();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const absl::Status& s : statuses) RRKIT_RETURN_IF_ERROR(s);

  MomentAccumulator acc;
  for (const ReplicateRecord& rec : records) acc.Add(rec.mu_hat);

  SimulationSummary summary;
  summary.replicates = config.replicates;
  summary.n = config.n;
  summary.seed = config.seed;
  summary.p = config.device.p();
  summary.mu_true = PopulationMean(config.support, config.population);
  summary.mean_mu_hat = acc.mean();
  RRKIT_ASSIGN_OR_RETURN(
      summary.theoretical_var,
      VarianceMeanTheoretical(config.device, config.support, config.population,
                              config.n));
  if (acc.count() >= 2) {
    const double var = acc.SampleVariance();
    const auto r = static_cast<double>(acc.count());
    summary.empirical_var = var;
    summary.variance_ratio = var / summary.theoretical_var;
    summary.mc_se_mean = std::sqrt(var / r);
    const double excess =
        acc.FourthCentralMoment() - var * var * (r - 3.0) / (r - 1.0);
    summary.mc_se_var = std::sqrt(std::max(0.0, excess) / r);
  }
  if (config.keep_replicates) summary.records = std::move(records);
  return summary;
}

}  // namespace rrkit
