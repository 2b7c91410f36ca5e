// Copyright 2026 The disclab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "disclab/rational.hpp"

namespace disclab {

/// 0/1 choice per column.
using SelectionVector = std::vector<std::uint8_t>;

/// Color per column, values in 1..k. Colors may be unused.
using Coloring = std::vector<int>;

/// Column-group counts z_i in 0..t.
using MultiplicityVector = std::vector<std::int64_t>;

inline constexpr int kDefaultMaxLog2Order = 20;
inline constexpr std::size_t kDefaultMaxColumns = std::size_t{1} << 22;

/// n x n matrix over {+1, -1} with H * H^T = n * I. Row-major.
class SignMatrix {
public:
  SignMatrix() = default;
  SignMatrix(std::size_t order, std::vector<std::int8_t> entries);

  [[nodiscard]] std::size_t order() const noexcept { return order_; }
  [[nodiscard]] int at(std::size_t i, std::size_t j) const noexcept { return entries_[i * order_ + j]; }
  [[nodiscard]] std::span<const std::int8_t> row(std::size_t i) const noexcept {
    return {entries_.data() + i * order_, order_};
  }

  /// Exact check of pairwise row orthogonality.
  [[nodiscard]] bool is_hadamard() const;

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

private:
  std::size_t order_ = 0;
  std::vector<std::int8_t> entries_;
};

/// Dense row-major matrix with rational entries in [0, 1].
class RatMatrix {
public:
  RatMatrix() = default;
  /// Zero matrix. Both dimensions must be positive.
  RatMatrix(std::size_t rows, std::size_t cols);
  /// Validates the [0, 1] entry range and the shape.
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }
  /// Throws InvalidArgument if the value is outside [0, 1].
  void set(std::size_t i, std::size_t j, const Rational& value);

  [[nodiscard]] std::span<const Rational> row(std::size_t i) const noexcept {
    return {entries_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<const Rational> entries() const noexcept { return entries_; }

  /// Keep only the listed columns, in the given order.
  [[nodiscard]] RatMatrix select_columns(std::span<const std::size_t> columns) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Sylvester doubling: H_1 = [1], H_{2n} = [[H, H], [H, -H]].
[[nodiscard]] SignMatrix hadamard_sylvester(int log2_order, int max_log2_order = kDefaultMaxLog2Order);

/// W = (J + H) / 2, entrywise (1 + H_ij) / 2.
[[nodiscard]] RatMatrix lift_w(const SignMatrix& h);

/// [A | A | ... | A] with t blocks.
[[nodiscard]] RatMatrix stack_horizontal(const RatMatrix& a, std::size_t t,
                                         std::size_t max_cols = kDefaultMaxColumns);

/// Rows of every block in order; all blocks must share a column count.
[[nodiscard]] RatMatrix stack_vertical(std::span<const RatMatrix> blocks);

/// z_i = sum_{j < t} x_{i + n j}.
[[nodiscard]] MultiplicityVector transfer_z(const SelectionVector& x, std::size_t n, std::size_t t);

/// A * v, exact.
[[nodiscard]] std::vector<Rational> multiply(const RatMatrix& a, std::span<const Rational> v);

/// p * 1 - x as a rational vector.
[[nodiscard]] std::vector<Rational> centered(const Rational& p, const SelectionVector& x);

[[nodiscard]] Rational max_abs(std::span<const Rational> v);
[[nodiscard]] Rational squared_norm(std::span<const Rational> v);

} // namespace disclab
