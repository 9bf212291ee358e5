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

// File formats shared by the command-line tools.
//
// Survey definition (JSON):
//
//   {
//     "values":       [0, 1, 2],
//     "stigmatizing": [false, true, true],
//     "pi":           [0.5, 0.3, 0.2],            // optional
//     "privacy": {                                 // optional
//       "mode": "nonstigmatizing_subset",          // or "all_stigmatizing"
//       "xi": 0.1,
//       "c": 0.15,                                 // subset mode only
//       "nonstigmatizing": [0]                     // 0-based, subset mode only
//     }
//   }
//
// All JSON output is written with 17 significant digits per number.

#ifndef RRKIT_DOCUMENTS_H_
#define RRKIT_DOCUMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "rrkit/design.h"
#include "rrkit/estimation.h"
#include "rrkit/model.h"
#include "rrkit/privacy.h"
#include "rrkit/simulation.h"

namespace rrkit {

using OrderedJson = nlohmann::ordered_json;

struct SurveyDefinition {
  SupportSpec support;
  std::optional<PopulationModel> population;
  // Already validated against `support`.
  std::optional<PrivacyPolicy> policy;
};

absl::StatusOr<SurveyDefinition> ParseSurvey(std::string_view text);
// IO_ERROR if the file cannot be read.
absl::StatusOr<SurveyDefinition> LoadSurvey(const std::string& path);

// Accepts a bare array of counts or an object with a "counts" array.
absl::StatusOr<std::vector<std::int64_t>> ParseCounts(std::string_view text);
absl::StatusOr<std::vector<std::int64_t>> LoadCounts(const std::string& path);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

// Serializes with two-space indentation and 17 significant digits for every
// floating-point number. Non-finite numbers become null. Ends with '\n'.
std::string DumpJson(const OrderedJson& value);

OrderedJson EstimateReportToJson(const EstimateReport& report);
OrderedJson PrivacyReportToJson(const PrivacyReport& report, double p);
OrderedJson CertificateToJson(const DesignCertificate& certificate);
OrderedJson P0TableToJson(const P0Table& table);
OrderedJson SimulationSummaryToJson(const SimulationSummary& summary);

// Header "m,<xi_1>,...,<xi_k>", then one row per m with 4-decimal entries.
std::string P0TableToCsv(const P0Table& table);

// Header "replicate,mu_hat,pi_hat_raw_1,...,pi_hat_raw_m".
std::string ReplicatesToCsv(const SimulationSummary& summary);

}  // namespace rrkit

#endif  // RRKIT_DOCUMENTS_H_
