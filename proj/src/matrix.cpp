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

#include "disclab/matrix.hpp"

#include <string>

#include "disclab/error.hpp"

namespace disclab {

namespace {

bool in_unit_interval(const Rational& r) { return r.sign() >= 0 && r <= Rational(1); }

} // namespace

SignMatrix::SignMatrix(std::size_t order, std::vector<std::int8_t> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order_ == 0) throw DimensionError("sign matrix order must be positive");
  if (entries_.size() != order_ * order_) throw DimensionError("sign matrix entry count mismatch");
  for (auto e : entries_)
    if (e != 1 && e != -1) throw InvalidArgument("sign matrix entries must be +1 or -1");
}

bool SignMatrix::is_hadamard() const {
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = a; b < order_; ++b) {
      std::int64_t dot = 0;
      for (std::size_t j = 0; j < order_; ++j) dot += at(a, j) * at(b, j);
      if (dot != (a == b ? static_cast<std::int64_t>(order_) : 0)) return false;
    }
  }
  return true;
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  if (entries_.size() != rows * cols) throw DimensionError("matrix entry count mismatch");
  for (const auto& e : entries_)
    if (!in_unit_interval(e)) throw InvalidArgument("matrix entry outside [0,1]: " + e.str());
}

void RatMatrix::set(std::size_t i, std::size_t j, const Rational& value) {
  if (!in_unit_interval(value)) throw InvalidArgument("matrix entry outside [0,1]: " + value.str());
  entries_[i * cols_ + j] = value;
}

RatMatrix RatMatrix::select_columns(std::span<const std::size_t> columns) const {
  RatMatrix out(rows_, columns.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c] >= cols_) throw DimensionError("column index out of range");
      out.entries_[i * columns.size() + c] = at(i, columns[c]);
    }
  return out;
}

SignMatrix hadamard_sylvester(int log2_order, int max_log2_order) {
  if (log2_order < 0) throw InvalidArgument("log2 order must be nonnegative");
  if (log2_order > max_log2_order)
    throw CapExceeded("Hadamard order 2^" + std::to_string(log2_order) + " exceeds cap 2^" +
                      std::to_string(max_log2_order));
  std::size_t n = std::size_t{1} << log2_order;
  std::vector<std::int8_t> e{1};
  for (std::size_t half = 1; half < n; half *= 2) {
    std::size_t size = half * 2;
    std::vector<std::int8_t> next(size * size);
    for (std::size_t i = 0; i < half; ++i)
      for (std::size_t j = 0; j < half; ++j) {
        std::int8_t v = e[i * half + j];
        next[i * size + j] = v;
        next[i * size + j + half] = v;
        next[(i + half) * size + j] = v;
        next[(i + half) * size + j + half] = static_cast<std::int8_t>(-v);
      }
    e = std::move(next);
  }
  return SignMatrix(n, std::move(e));
}

RatMatrix lift_w(const SignMatrix& h) {
  std::size_t n = h.order();
  RatMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w.set(i, j, Rational(h.at(i, j) == 1 ? 1 : 0));
  return w;
}

RatMatrix stack_horizontal(const RatMatrix& a, std::size_t t, std::size_t max_cols) {
  if (t == 0) throw InvalidArgument("block count must be positive");
  if (a.cols() > max_cols / t)
    throw CapExceeded("stacked width " + std::to_string(a.cols()) + "*" + std::to_string(t) + " exceeds cap " +
                      std::to_string(max_cols));
  std::size_t m = a.cols();
  std::vector<Rational> e(a.rows() * m * t);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t b = 0; b < t; ++b)
      for (std::size_t j = 0; j < m; ++j) e[i * m * t + b * m + j] = a.at(i, j);
  return RatMatrix(a.rows(), m * t, std::move(e));
}

RatMatrix stack_vertical(std::span<const RatMatrix> blocks) {
  if (blocks.empty()) throw DimensionError("no blocks to stack");
  std::size_t m = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != m)
      throw DimensionError("column count mismatch: " + std::to_string(b.cols()) + " vs " + std::to_string(m));
    rows += b.rows();
  }
  std::vector<Rational> e;
  e.reserve(rows * m);
  for (const auto& b : blocks) e.insert(e.end(), b.entries().begin(), b.entries().end());
  return RatMatrix(rows, m, std::move(e));
}

MultiplicityVector transfer_z(const SelectionVector& x, std::size_t n, std::size_t t) {
  if (x.size() != n * t)
    throw DimensionError("selection length " + std::to_string(x.size()) + " != n*t = " + std::to_string(n * t));
  MultiplicityVector z(n, 0);
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t i = 0; i < n; ++i) z[i] += x[i + n * j];
  return z;
}

std::vector<Rational> multiply(const RatMatrix& a, std::span<const Rational> v) {
  if (v.size() != a.cols()) throw DimensionError("vector length does not match column count");
  std::vector<Rational> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational acc;
    auto row = a.row(i);
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero() && !v[j].is_zero()) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<Rational> centered(const Rational& p, const SelectionVector& x) {
  std::vector<Rational> v(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) v[j] = x[j] ? p - Rational(1) : p;
  return v;
}

Rational max_abs(std::span<const Rational> v) {
  Rational best;
  for (const auto& r : v) best = max(best, abs(r));
  return best;
}

Rational squared_norm(std::span<const Rational> v) {
  Rational acc;
  for (const auto& r : v) acc += r * r;
  return acc;
}

} // namespace disclab
