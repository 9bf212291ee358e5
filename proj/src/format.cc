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

#include "rrkit/format.h"

#include <array>
#include <charconv>
#include <cmath>

namespace rrkit {
namespace {

template <typename... Args>
std::string ToChars(double value, Args... args) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 args...);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

}  // namespace

double RoundHalfEven(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // nearbyint honours the default FE_TONEAREST mode, which breaks ties to
  // even.
  return std::nearbyint(value * scale) / scale;
}

std::string FormatFixed(double value, int decimals) {
  std::string out =
      ToChars(RoundHalfEven(value, decimals), std::chars_format::fixed,
              decimals);
  if (out.starts_with('-') && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string FormatShortest(double value) { return ToChars(value); }

std::string FormatSignificant17(double value) {
  return ToChars(value, std::chars_format::general, 17);
}

}  // namespace rrkit
