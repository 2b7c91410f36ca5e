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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace disclab {

/// Exact fraction num/den over 64-bit integers.
///
/// Always kept in canonical form: den > 0 and gcd(|num|, den) = 1. Every
/// operation is computed in 128-bit intermediates, reduced, and then
/// narrowed; if the reduced result does not fit in 64 bits an
/// OverflowError is thrown. Nothing is ever rounded.
class Rational {
public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t value) noexcept : num_(value) {} // NOLINT: implicit by design of the numeric tower
  Rational(std::int64_t num, std::int64_t den);

  [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }

  [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }
  [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
  [[nodiscard]] constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept;

  /// Largest integer not exceeding the value.
  [[nodiscard]] std::int64_t floor() const noexcept;
  /// Smallest integer not below the value.
  [[nodiscard]] std::int64_t ceil() const noexcept;

  [[nodiscard]] double to_double() const noexcept;

  /// "a/b", or "a" when the denominator is 1.
  [[nodiscard]] std::string str() const;

  /// Accepts "a", "-a", "a/b", "-a/b" with optional surrounding whitespace.
  /// The result is reduced; a zero or negative denominator is rejected.
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

[[nodiscard]] Rational abs(const Rational& r);

/// [x]_+ = max{0, x}.
[[nodiscard]] Rational positive_part(const Rational& r);

[[nodiscard]] inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
[[nodiscard]] inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// floor(sqrt(v)) for v >= 0, by bisection.
[[nodiscard]] unsigned __int128 isqrt(unsigned __int128 v) noexcept;

/// Checked 64-bit helpers shared by the integer-scaled search code.
[[nodiscard]] std::int64_t checked_add(std::int64_t a, std::int64_t b);
[[nodiscard]] std::int64_t checked_mul(std::int64_t a, std::int64_t b);
[[nodiscard]] std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

} // namespace disclab
