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

// Locale-independent number formatting.

#ifndef RRKIT_FORMAT_H_
#define RRKIT_FORMAT_H_

#include <string>

namespace rrkit {

// Rounds to `decimals` places, ties to even.
double RoundHalfEven(double value, int decimals);

// RoundHalfEven followed by fixed notation with exactly `decimals` places.
std::string FormatFixed(double value, int decimals);

// Shortest representation that round-trips.
std::string FormatShortest(double value);

// 17 significant digits (always round-trips).
std::string FormatSignificant17(double value);

}  // namespace rrkit

#endif  // RRKIT_FORMAT_H_
