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

// Device design under a privacy constraint.
//
// Both estimator variances fall as p grows, while each privacy guarantee
// holds for every admissible population exactly when p <= p0. The
// efficiency-maximizing admissible device therefore sits at p = p0.

#ifndef RRKIT_DESIGN_H_
#define RRKIT_DESIGN_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rrkit/model.h"

namespace rrkit {

// Largest p with alpha <= xi for every population on m values:
//   p0 = 1 / (1 + (m / xi) ((1 - xi) / 2)^2).
absl::StatusOr<double> P0AllStigmatizing(std::size_t m, double xi);

// Largest p with beta >= xi for every population whose non-stigmatizing mass
// is at least c:
//   p0 = ((c - xi) / m) / ((c - xi) / m + xi (1 - c)),   0 < xi < c < 1.
// Holds for any number t of non-stigmatizing values.
absl::StatusOr<double> P0NonStigmatizing(std::size_t m, double xi, double c);

struct DesignCertificate {
  Device device;
  double p0;
  PrivacyMode mode;
  double xi;
  std::optional<double> c;
  std::size_t m;
  // Number of non-stigmatizing values (0 in all-stigmatizing mode).
  std::size_t t;
  std::string guarantee_statement;
};

// Validates `policy` against `support` and returns the device with p = p0.
absl::StatusOr<DesignCertificate> DesignDevice(const PrivacyPolicy& policy,
                                               const SupportSpec& support);

struct P0Table {
  std::vector<std::size_t> m_values;
  std::vector<double> xi_values;
  // rounded[r][c] is P0AllStigmatizing(m_values[r], xi_values[c]) rounded
  // half-to-even at 4 decimals.
  std::vector<std::vector<double>> rounded;
  std::vector<std::vector<double>> exact;
};

inline constexpr int kTableDecimals = 4;

absl::StatusOr<P0Table> MakeP0Table(std::vector<std::size_t> m_values,
                                    std::vector<double> xi_values);

}  // namespace rrkit

#endif  // RRKIT_DESIGN_H_
