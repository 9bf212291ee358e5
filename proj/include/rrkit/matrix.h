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

#ifndef RRKIT_MATRIX_H_
#define RRKIT_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace rrkit {

// Dense row-major square matrix of doubles. Small (m x m with m the support
// size), so no attempt is made at blocking or SIMD.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size, double fill = 0.0)
      : size_(size), data_(size * size, fill) {}

  std::size_t size() const { return size_; }

  double& operator()(std::size_t row, std::size_t col) {
    return data_[row * size_ + col];
  }
  double operator()(std::size_t row, std::size_t col) const {
    return data_[row * size_ + col];
  }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * size_, size_);
  }

  double RowSum(std::size_t r) const;
  double ColumnSum(std::size_t c) const;

  // Largest absolute entrywise difference; sizes must match.
  static double MaxAbsDifference(const SquareMatrix& a, const SquareMatrix& b);

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

}  // namespace rrkit

#endif  // RRKIT_MATRIX_H_
