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

#ifndef RRKIT_CLI_H_
#define RRKIT_CLI_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rrkit/verify.h"

namespace rrkit {

// Exit codes of the rrkit tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitIo = 3;

inline constexpr char kThreadsEnvVar[] = "RRKIT_THREADS";

struct CliHooks {
  // Replaces the default implementations checked by `verify`.
  std::optional<VerifyOptions> verify_overrides;
};

// Runs one rrkit invocation. `args` excludes the program name. Documents go
// to `out` (or to --out), structured JSON errors to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const CliHooks& hooks = {});

// Worker count for parallel stages: RRKIT_THREADS when it parses as a
// positive integer, otherwise the hardware concurrency.
int ThreadsFromEnvironment();

}  // namespace rrkit

#endif  // RRKIT_CLI_H_
