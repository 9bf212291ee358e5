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

#include "rrkit/design.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "rrkit/format.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

absl::Status CheckM(std::size_t m) {
  if (m < 2) {
    return InvalidInput(ErrorCode::kSupportTooSmall,
                        absl::StrCat("m = ", m, " must be >= 2"));
  }
  return absl::OkStatus();
}

absl::Status CheckXi(double xi) {
  if (!(xi > 0.0 && xi < 1.0)) {
    return InvalidInput(ErrorCode::kXiOutOfRange,
                        absl::StrCat("xi = ", xi, " must lie in (0, 1)"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> P0AllStigmatizing(std::size_t m, double xi) {
  RRKIT_RETURN_IF_ERROR(CheckM(m));
  RRKIT_RETURN_IF_ERROR(CheckXi(xi));
  const double half_gap = (1.0 - xi) / 2.0;
  return 1.0 / (1.0 + (static_cast<double>(m) / xi) * half_gap * half_gap);
}

absl::StatusOr<double> P0NonStigmatizing(std::size_t m, double xi, double c) {
  RRKIT_RETURN_IF_ERROR(CheckM(m));
  RRKIT_RETURN_IF_ERROR(CheckXi(xi));
  if (!(c > 0.0 && c < 1.0)) {
    return InvalidInput(ErrorCode::kCOutOfRange,
                        absl::StrCat("c = ", c, " must lie in (0, 1)"));
  }
  if (xi >= c) {
    return InvalidInput(ErrorCode::kXiGeC,
                        absl::StrCat("xi = ", xi, " must be below c = ", c));
  }
  const double a = (c - xi) / static_cast<double>(m);
  return a / (a + xi * (1.0 - c));
}

absl::StatusOr<DesignCertificate> DesignDevice(const PrivacyPolicy& policy,
                                               const SupportSpec& support) {
  RRKIT_ASSIGN_OR_RETURN(PrivacyPolicy checked,
                         ValidatePolicy(policy, support));
  const std::size_t m = support.size();
  double p0 = 0.0;
  std::optional<double> c;
  std::string statement;
  switch (checked.mode()) {
    case PrivacyMode::kAllStigmatizing: {
      RRKIT_ASSIGN_OR_RETURN(p0, P0AllStigmatizing(m, checked.xi()));
      statement = absl::StrCat(
          "alpha <= ", FormatShortest(checked.xi()),
          " for every population distribution over the ", m,
          " support values when p = ", FormatFixed(p0, kTableDecimals));
      break;
    }
    case PrivacyMode::kNonStigmatizingSubset: {
      c = checked.c();
      RRKIT_ASSIGN_OR_RETURN(p0, P0NonStigmatizing(m, checked.xi(), *c));
      statement = absl::StrCat(
          "beta >= ", FormatShortest(checked.xi()),
          " for every population distribution over the ", m,
          " support values whose non-stigmatizing mass is at least ",
          FormatShortest(*c), " when p = ", FormatFixed(p0, kTableDecimals));
      break;
    }
  }
  RRKIT_ASSIGN_OR_RETURN(Device device, Device::Create(p0, m));
  return DesignCertificate{
      .device = device,
      .p0 = p0,
      .mode = checked.mode(),
      .xi = checked.xi(),
      .c = c,
      .m = m,
      .t = checked.nonstigmatizing().size(),
      .guarantee_statement = std::move(statement),
  };
}

absl::StatusOr<P0Table> MakeP0Table(std::vector<std::size_t> m_values,
                                    std::vector<double> xi_values) {
  if (m_values.empty() || xi_values.empty()) {
    return InvalidInput(ErrorCode::kBadGrid,
                        "p0 table needs at least one m and one xi value");
  }
  P0Table table;
  for (std::size_t m : m_values) {
    std::vector<double> rounded_row;
    std::vector<double> exact_row;
    for (double xi : xi_values) {
      absl::StatusOr<double> p0 = P0AllStigmatizing(m, xi);
      if (!p0.ok()) {
        return InvalidInput(ErrorCode::kBadGrid,
                            std::string(p0.status().message()));
      }
      exact_row.push_back(*p0);
      rounded_row.push_back(RoundHalfEven(*p0, kTableDecimals));
    }
    table.exact.push_back(std::move(exact_row));
    table.rounded.push_back(std::move(rounded_row));
  }
  table.m_values = std::move(m_values);
  table.xi_values = std::move(xi_values);
  return table;
}

}  // namespace rrkit
