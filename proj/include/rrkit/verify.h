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

// Grid-wide agreement checks between the closed-form modules and the
// brute-force oracles.

#ifndef RRKIT_VERIFY_H_
#define RRKIT_VERIFY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rrkit/model.h"

namespace rrkit {

using MeanVarianceFn = std::function<absl::StatusOr<double>(
    const Device&, const SupportSpec&, const PopulationModel&, std::int64_t)>;
using ProportionVarianceFn = std::function<absl::StatusOr<double>(
    const Device&, const PopulationModel&, std::int64_t)>;

struct VerifyOptions {
  // Simplex resolution for every population grid.
  double grid_step = 0.05;
  // Implementations under test. Defaults are the library's closed forms;
  // tests substitute broken variants to make sure the harness notices.
  MeanVarianceFn variance_mean;
  ProportionVarianceFn avg_variance_proportions;
};

struct CheckResult {
  std::string name;
  std::int64_t cases = 0;
  // Worst observed value of the check's discrepancy statistic. Passing means
  // worst <= tolerance (or worst < tolerance when `strict`).
  double worst = 0.0;
  double tolerance = 0.0;
  bool strict = false;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

absl::StatusOr<VerifyReport> RunVerification(const VerifyOptions& options);

// Human-readable report, one line per check.
std::string FormatVerifyReport(const VerifyReport& report);

}  // namespace rrkit

#endif  // RRKIT_VERIFY_H_
