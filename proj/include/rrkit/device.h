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

#ifndef RRKIT_DEVICE_H_
#define RRKIT_DEVICE_H_

#include <cstddef>
#include <vector>

#include "absl/status/statusor.h"
#include "rrkit/matrix.h"
#include "rrkit/model.h"
#include "rrkit/random.h"

namespace rrkit {

// Conditional response probabilities of a device. Entry (j, i) is
// Prob(R = x_i | X = x_j): rows are true values, columns are responses.
class ResponseKernel {
 public:
  explicit ResponseKernel(const Device& device);

  std::size_t size() const { return matrix_.size(); }
  double operator()(std::size_t true_index, std::size_t response) const {
    return matrix_(true_index, response);
  }
  const SquareMatrix& matrix() const { return matrix_; }

 private:
  SquareMatrix matrix_;
};

inline ResponseKernel MakeResponseKernel(const Device& device) {
  return ResponseKernel(device);
}

// Maps one uniform variate u in [0, 1) to a response index. u < p selects the
// truth card; otherwise the remaining interval [p, 1) is split evenly among
// the m forced-report cards. Exposed so the card choice can be pinned in
// tests.
std::size_t ResponseForUniform(const Device& device, std::size_t true_index,
                               double u);

// Draws the randomized response of a respondent whose true value has index
// `true_index`, consuming exactly one variate from `stream`.
absl::StatusOr<std::size_t> DrawResponse(const Device& device,
                                         const SupportSpec& support,
                                         std::size_t true_index,
                                         RandomStream& stream);

// Marginal response distribution lambda_i = p * pi_i + (1 - p) / m.
absl::StatusOr<std::vector<double>> ResponseDistribution(
    const Device& device, const PopulationModel& population);

}  // namespace rrkit

#endif  // RRKIT_DEVICE_H_
