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

#include "rrkit/matrix.h"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace rrkit {

double SquareMatrix::RowSum(std::size_t r) const {
  double sum = 0.0;
  for (double v : row(r)) sum += v;
  return sum;
}

double SquareMatrix::ColumnSum(std::size_t c) const {
  double sum = 0.0;
  for (std::size_t r = 0; r < size_; ++r) sum += (*this)(r, c);
  return sum;
}

double SquareMatrix::MaxAbsDifference(const SquareMatrix& a,
                                      const SquareMatrix& b) {
  assert(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    worst = std::max(worst, std::abs(a.data_[i] - b.data_[i]));
  }
  return worst;
}

}  // namespace rrkit
