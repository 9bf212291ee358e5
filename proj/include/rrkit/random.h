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

#ifndef RRKIT_RANDOM_H_
#define RRKIT_RANDOM_H_

#include <cstdint>
#include <random>

namespace rrkit {

// A named, seeded stream of uniform variates. The engine and its seed_seq
// initialization are fully specified by the C++ standard, and uniforms are
// formed from the top 53 bits directly, so a (seed, stream_index) pair yields
// the same sequence on every conforming platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0);

  // Uniform double in [0, 1).
  double NextUniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rrkit

#endif  // RRKIT_RANDOM_H_
