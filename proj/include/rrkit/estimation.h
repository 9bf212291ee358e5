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

// Unbiased estimation of the population mean and class proportions from
// randomized responses, plus the exact sampling variances of those
// estimators under i.i.d. (with-replacement) sampling.
//
// Only the raw estimators are unbiased and covered by the variance formulas.
// The truncated proportions are a presentation aid.

#ifndef RRKIT_ESTIMATION_H_
#define RRKIT_ESTIMATION_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "rrkit/model.h"

namespace rrkit {

struct ProportionEstimates {
  // pi_hat_i = (w_i - (1 - p) / m) / p; may leave [0, 1].
  std::vector<double> raw;
  std::vector<double> truncated;
  bool raw_out_of_range = false;
};

absl::StatusOr<ProportionEstimates> EstimateProportions(
    const ResponseSample& sample, const Device& device);

// mu_hat = sum_i x_i * pi_hat_i (raw proportions).
absl::StatusOr<double> EstimateMean(const ResponseSample& sample,
                                    const Device& device,
                                    const SupportSpec& support);

// Var(mu_hat) for sample size n:
//
//   (1 / (n p^2)) * { p sigma_X^2 + (1 - p) (1/m) sum_i (x_i - xbar)^2
//                     + p (1 - p) (mu_X - xbar)^2 }
//
// The last term carries +p(1-p); this is what the multinomial covariance of
// the response counts produces.
absl::StatusOr<double> VarianceMeanTheoretical(const Device& device,
                                               const SupportSpec& support,
                                               const PopulationModel& population,
                                               std::int64_t n);

// sum_i Var(pi_hat_i) = (1/n) { 1/p^2 - sum_i pi_i^2 - (1/m)(1/p^2 - 1) },
// which equals (1 / (n p^2)) sum_i lambda_i (1 - lambda_i).
absl::StatusOr<double> AvgVarianceProportionsTheoretical(
    const Device& device, const PopulationModel& population, std::int64_t n);

// Plug-in estimate of Var(mu_hat): the multinomial form
//   (1 / (n p^2)) { sum_i x_i^2 w_i (1 - w_i) - sum_{i != j} x_i x_j w_i w_j }
// evaluated at the observed proportions w. No bias correction.
absl::StatusOr<double> VarianceMeanPlugin(const ResponseSample& sample,
                                          const Device& device,
                                          const SupportSpec& support);

struct VarianceReport {
  double var_mu = 0.0;
  double avg_var_pi = 0.0;
  std::int64_t n = 0;
};

absl::StatusOr<VarianceReport> TheoreticalVariances(
    const Device& device, const SupportSpec& support,
    const PopulationModel& population, std::int64_t n);

// Full estimate from a response sample, with diagnostics flags.
absl::StatusOr<EstimateReport> Estimate(const ResponseSample& sample,
                                        const Device& device,
                                        const SupportSpec& support);

}  // namespace rrkit

#endif  // RRKIT_ESTIMATION_H_
