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

#include "rrkit/device.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "rrkit/status.h"

namespace rrkit {

ResponseKernel::ResponseKernel(const Device& device)
    : matrix_(device.m(), device.forced_card_probability()) {
  for (std::size_t j = 0; j < device.m(); ++j) {
    matrix_(j, j) += device.p();
  }
}

std::size_t ResponseForUniform(const Device& device, std::size_t true_index,
                               double u) {
  if (u < device.p()) return true_index;
  const double scaled = (u - device.p()) / (1.0 - device.p()) *
                        static_cast<double>(device.m());
  const auto forced = static_cast<std::size_t>(scaled);
  return std::min(forced, device.m() - 1);
}

absl::StatusOr<std::size_t> DrawResponse(const Device& device,
                                         const SupportSpec& support,
                                         std::size_t true_index,
                                         RandomStream& stream) {
  if (support.size() != device.m()) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        absl::StrCat("support has ", support.size(),
                                     " values but the device has m = ",
                                     device.m()));
  }
  if (true_index >= device.m()) {
    return InvalidInput(ErrorCode::kIndexOutOfRange,
                        absl::StrCat("true index ", true_index,
                                     " is outside [0, ", device.m(), ")"));
  }
  return ResponseForUniform(device, true_index, stream.NextUniform());
}

absl::StatusOr<std::vector<double>> ResponseDistribution(
    const Device& device, const PopulationModel& population) {
  if (population.size() != device.m()) {
    return InvalidInput(ErrorCode::kDimensionMismatch,
                        absl::StrCat("population has ", population.size(),
                                     " entries but the device has m = ",
                                     device.m()));
  }
  std::vector<double> lambda(device.m());
  for (std::size_t i = 0; i < device.m(); ++i) {
    lambda[i] = device.p() * population[i] + device.forced_card_probability();
  }
  return lambda;
}

}  // namespace rrkit
