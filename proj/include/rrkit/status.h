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

#ifndef RRKIT_STATUS_H_
#define RRKIT_STATUS_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"

namespace rrkit {

// Stable machine-readable error codes. The string form of each code is part
// of the CLI error contract and must not change.
enum class ErrorCode {
  kSupportTooSmall,
  kNonFiniteValue,
  kDuplicateValues,
  kNoStigmatizingValue,
  kStigmaLengthMismatch,
  kNegativeProbability,
  kPiNotNormalized,
  kDimensionMismatch,
  kPOutOfRange,
  kXiOutOfRange,
  kCOutOfRange,
  kXiGeC,
  kModeMismatch,
  kBadNonstigmatizingSet,
  kEmptySample,
  kNegativeCount,
  kCountSumMismatch,
  kIndexOutOfRange,
  kBadSampleSize,
  kBadReplicates,
  kBadStep,
  kInfeasibleConstraint,
  kEnumerationTooLarge,
  kBadGrid,
  kMissingPi,
  kMissingP,
  kMissingPolicy,
  kParseError,
  kIoError,
  kUsage,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

// Builds an InvalidArgument status tagged with `code`.
absl::Status InvalidInput(ErrorCode code, std::string_view message);

// Builds a status of the given canonical kind tagged with `code`.
absl::Status MakeError(absl::StatusCode kind, ErrorCode code,
                       std::string_view message);

// Returns the stable code string carried by `status`, or "UNKNOWN" when the
// status was not produced by this library. Returns "OK" for an ok status.
std::string ErrorCodeOf(const absl::Status& status);

}  // namespace rrkit

#define RRKIT_RETURN_IF_ERROR(expr)              \
  do {                                           \
    if (absl::Status _st = (expr); !_st.ok()) {  \
      return _st;                                \
    }                                            \
  } while (0)

#define RRKIT_CONCAT_INNER_(a, b) a##b
#define RRKIT_CONCAT_(a, b) RRKIT_CONCAT_INNER_(a, b)
#define RRKIT_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                 \
  if (!tmp.ok()) return tmp.status();                \
  lhs = std::move(tmp).value()

#define RRKIT_ASSIGN_OR_RETURN(lhs, expr) \
  RRKIT_ASSIGN_OR_RETURN_IMPL_(RRKIT_CONCAT_(_statusor_, __LINE__), lhs, expr)

#endif  // RRKIT_STATUS_H_
