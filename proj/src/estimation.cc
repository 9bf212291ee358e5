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

#include "rrkit/estimation.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

absl::Status CheckSize(std::size_t got, std::size_t m, const char* what) {
  if (got != m) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        absl::StrCat(what, " has ", got,
                                     " entries but the device has m = ", m));
  }
  return absl::OkStatus();
}

absl::Status CheckSampleSize(std::int64_t n) {
  if (n < 1) {
    return InvalidInput(ErrorCode::kBadSampleSize,
                        absl::StrCat("sample size n = ", n, " must be >= 1"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ProportionEstimates> EstimateProportions(
    const ResponseSample& sample, const Device& device) {
  RRKIT_RETURN_IF_ERROR(CheckSize(sample.size(), device.m(), "sample"));
  const double p = device.p();
  const double forced = device.forced_card_probability();

  ProportionEstimates out;
  out.raw.resize(device.m());
  out.truncated.resize(device.m());
  double clamped_sum = 0.0;
  for (std::size_t i = 0; i < device.m(); ++i) {
    out.raw[i] = (sample.proportion(i) - forced) / p;
    if (out.raw[i] < 0.0 || out.raw[i] > 1.0) out.raw_out_of_range = true;
    out.truncated[i] = std::clamp(out.raw[i], 0.0, 1.0);
    clamped_sum += out.truncated[i];
  }
  // The raw estimates sum to 1, so at least one is positive and clamped_sum
  // is strictly positive.
  for (double& v : out.truncated) v /= clamped_sum;
  return out;
}

absl::StatusOr<double> EstimateMean(const ResponseSample& sample,
                                    const Device& device,
                                    const SupportSpec& support) {
  RRKIT_RETURN_IF_ERROR(CheckSize(support.size(), device.m(), "support"));
  RRKIT_ASSIGN_OR_RETURN(ProportionEstimates est,
                         EstimateProportions(sample, device));
  double mu = 0.0;
  for (std::size_t i = 0; i < device.m(); ++i) {
    mu += support.value(i) * est.raw[i];
  }
  return mu;
}

absl::StatusOr<double> VarianceMeanTheoretical(const Device& device,
                                               const SupportSpec& support,
                                               const PopulationModel& population,
                                               std::int64_t n) {
  RRKIT_RETURN_IF_ERROR(CheckSampleSize(n));
  RRKIT_RETURN_IF_ERROR(CheckSize(support.size(), device.m(), "support"));
  RRKIT_RETURN_IF_ERROR(
      CheckSize(population.size(), device.m(), "population"));

  const double p = device.p();
  const double m = static_cast<double>(device.m());
  const double sigma2 = PopulationVariance(support, population);
  const double mu = PopulationMean(support, population);
  const double xbar = support.ValueAverage();
  double spread = 0.0;
  for (double x : support.values()) spread += (x - xbar) * (x - xbar);
  spread /= m;
  const double shift = (mu - xbar) * (mu - xbar);

  const double bracket =
      p * sigma2 + (1.0 - p) * spread + p * (1.0 - p) * shift;
  return bracket / (static_cast<double>(n) * p * p);
}

absl::StatusOr<double> AvgVarianceProportionsTheoretical(
    const Device& device, const PopulationModel& population, std::int64_t n) {
  RRKIT_RETURN_IF_ERROR(CheckSampleSize(n));
  RRKIT_RETURN_IF_ERROR(
      CheckSize(population.size(), device.m(), "population"));
  const double inv_p2 = 1.0 / (device.p() * device.p());
  double sum_sq = 0.0;
  for (double v : population.pi()) sum_sq += v * v;
  const double m = static_cast<double>(device.m());
  return (inv_p2 - sum_sq - (inv_p2 - 1.0) / m) / static_cast<double>(n);
}

absl::StatusOr<double> VarianceMeanPlugin(const ResponseSample& sample,
                                          const Device& device,
                                          const SupportSpec& support) {
  RRKIT_RETURN_IF_ERROR(CheckSize(sample.size(), device.m(), "sample"));
  RRKIT_RETURN_IF_ERROR(CheckSize(support.size(), device.m(), "support"));
  const std::size_t m = device.m();
  double diagonal = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double wi = sample.proportion(i);
    const double xi = support.value(i);
    diagonal += xi * xi * wi * (1.0 - wi);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      cross += xi * support.value(j) * wi * sample.proportion(j);
    }
  }
  const double p = device.p();
  return (diagonal - cross) / (static_cast<double>(sample.n()) * p * p);
}

absl::StatusOr<VarianceReport> TheoreticalVariances(
    const Device& device, const SupportSpec& support,
    const PopulationModel& population, std::int64_t n) {
  VarianceReport report;
  report.n = n;
  RRKIT_ASSIGN_OR_RETURN(report.var_mu, VarianceMeanTheoretical(
                                            device, support, population, n));
  RRKIT_ASSIGN_OR_RETURN(report.avg_var_pi, AvgVarianceProportionsTheoretical(
                                                device, population, n));
  return report;
}

absl::StatusOr<EstimateReport> Estimate(const ResponseSample& sample,
                                        const Device& device,
                                        const SupportSpec& support) {
  RRKIT_RETURN_IF_ERROR(CheckSize(support.size(), device.m(), "support"));
  RRKIT_ASSIGN_OR_RETURN(ProportionEstimates est,
                         EstimateProportions(sample, device));
  EstimateReport report;
  for (std::size_t i = 0; i < device.m(); ++i) {
    report.mu_hat += support.value(i) * est.raw[i];
  }
  RRKIT_ASSIGN_OR_RETURN(report.var_mu_plugin,
                         VarianceMeanPlugin(sample, device, support));
  report.pi_hat_raw = std::move(est.raw);
  report.pi_hat_truncated = std::move(est.truncated);
  if (est.raw_out_of_range) report.flags.emplace_back(kFlagRawOutOfRange);
  return report;
}

}  // namespace rrkit
