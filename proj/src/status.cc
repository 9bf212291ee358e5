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

#include "rrkit/status.h"

#include <optional>
#include <string>

#include "absl/strings/cord.h"

namespace rrkit {
namespace {

constexpr char kCodePayloadUrl[] = "type.rrkit/error_code";

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSupportTooSmall:
      return "SUPPORT_TOO_SMALL";
    case ErrorCode::kNonFiniteValue:
      return "NON_FINITE_VALUE";
    case ErrorCode::kDuplicateValues:
      return "DUPLICATE_VALUES";
    case ErrorCode::kNoStigmatizingValue:
      return "NO_STIGMATIZING_VALUE";
    case ErrorCode::kStigmaLengthMismatch:
      return "STIGMA_LENGTH_MISMATCH";
    case ErrorCode::kNegativeProbability:
      return "NEGATIVE_PROBABILITY";
    case ErrorCode::kPiNotNormalized:
      return "PI_NOT_NORMALIZED";
    case ErrorCode::kDimensionMismatch:
      return "DIMENSION_MISMATCH";
    case ErrorCode::kPOutOfRange:
      return "P_OUT_OF_RANGE";
    case ErrorCode::kXiOutOfRange:
      return "XI_OUT_OF_RANGE";
    case ErrorCode::kCOutOfRange:
      return "C_OUT_OF_RANGE";
    case ErrorCode::kXiGeC:
      return "XI_GE_C";
    case ErrorCode::kModeMismatch:
      return "MODE_MISMATCH";
    case ErrorCode::kBadNonstigmatizingSet:
      return "BAD_NONSTIGMATIZING_SET";
    case ErrorCode::kEmptySample:
      return "EMPTY_SAMPLE";
    case ErrorCode::kNegativeCount:
      return "NEGATIVE_COUNT";
    case ErrorCode::kCountSumMismatch:
      return "COUNT_SUM_MISMATCH";
    case ErrorCode::kIndexOutOfRange:
      return "INDEX_OUT_OF_RANGE";
    case ErrorCode::kBadSampleSize:
      return "BAD_SAMPLE_SIZE";
    case ErrorCode::kBadReplicates:
      return "BAD_REPLICATES";
    case ErrorCode::kBadStep:
      return "BAD_STEP";
    case ErrorCode::kInfeasibleConstraint:
      return "INFEASIBLE_CONSTRAINT";
    case ErrorCode::kEnumerationTooLarge:
      return "ENUMERATION_TOO_LARGE";
    case ErrorCode::kBadGrid:
      return "BAD_GRID";
    case ErrorCode::kMissingPi:
      return "MISSING_PI";
    case ErrorCode::kMissingP:
      return "MISSING_P";
    case ErrorCode::kMissingPolicy:
      return "MISSING_POLICY";
    case ErrorCode::kParseError:
      return "PARSE_ERROR";
    case ErrorCode::kIoError:
      return "IO_ERROR";
    case ErrorCode::kUsage:
      return "USAGE_ERROR";
    case ErrorCode::kInternal:
      return "INTERNAL";
  }
  return "UNKNOWN";
}

absl::Status MakeError(absl::StatusCode kind, ErrorCode code,
                       std::string_view message) {
  absl::Status status(kind,
                      absl::string_view(message.data(), message.size()));
  const std::string_view name = ErrorCodeName(code);
  status.SetPayload(kCodePayloadUrl,
                    absl::Cord(absl::string_view(name.data(), name.size())));
  return status;
}

absl::Status InvalidInput(ErrorCode code, std::string_view message) {
  return MakeError(absl::StatusCode::kInvalidArgument, code, message);
}

std::string ErrorCodeOf(const absl::Status& status) {
  if (status.ok()) return "OK";
  absl::optional<absl::Cord> payload = status.GetPayload(kCodePayloadUrl);
  if (!payload.has_value()) return "UNKNOWN";
  return std::string(*payload);
}

}  // namespace rrkit
