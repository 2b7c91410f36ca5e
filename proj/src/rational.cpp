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

#include "disclab/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <ostream>

#include "disclab/error.hpp"

namespace disclab {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

bool fits(i128 v) { return v >= kMin && v <= kMax; }

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den == 0) throw InvalidArgument("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd128(uabs(num), u128(den));
  if (g > 1) {
    num /= i128(g);
    den /= i128(g);
  }
  if (!fits(num) || !fits(den)) throw OverflowError("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(i128(num_) + rhs.num_, den_);
    return *this;
  }
  // a/b + c/d with g = gcd(b, d): (a*(d/g) + c*(b/g)) / (b/g*d)
  i128 g = i128(gcd128(u128(den_), u128(rhs.den_)));
  i128 n = i128(num_) * (rhs.den_ / g) + i128(rhs.num_) * (den_ / g);
  i128 d = i128(den_ / g) * rhs.den_;
  *this = from_wide(n, d);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  // cross-reduce first so the 128-bit products cannot overflow
  i128 g1 = i128(gcd128(uabs(num_), u128(rhs.den_)));
  i128 g2 = i128(gcd128(uabs(rhs.num_), u128(den_)));
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  i128 n = (i128(num_) / g1) * (i128(rhs.num_) / g2);
  i128 d = (i128(den_) / g2) * (i128(rhs.den_) / g1);
  *this = from_wide(n, d);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw InvalidArgument("division by zero");
  Rational inv;
  inv.num_ = rhs.den_;
  inv.den_ = rhs.num_;
  if (inv.den_ < 0) {
    if (inv.den_ == std::numeric_limits<std::int64_t>::min()) throw OverflowError("rational overflow");
    inv.num_ = -inv.num_;
    inv.den_ = -inv.den_;
  }
  return *this *= inv;
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw OverflowError("rational overflow");
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept {
  // |num| < 2^63 and den < 2^63, so the products fit in 127 bits.
  i128 l = i128(lhs.num_) * rhs.den_;
  i128 r = i128(rhs.num_) * lhs.den_;
  return l <=> r;
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

double Rational::to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) throw OverflowError("integer out of range: " + std::string(s));
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
    return v;
  };
  std::string_view body = trim(text);
  auto slash = body.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(body));
  std::int64_t n = parse_int(body.substr(0, slash));
  std::int64_t d = parse_int(body.substr(slash + 1));
  if (d <= 0) throw InvalidArgument("rational denominator must be positive: '" + std::string(text) + "'");
  return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational positive_part(const Rational& r) { return r.sign() < 0 ? Rational(0) : r; }

unsigned __int128 isqrt(unsigned __int128 v) noexcept {
  // invariant: lo*lo <= v < (hi+1)*(hi+1)
  u128 lo = 0;
  u128 hi = (u128(1) << 64) - 1;
  while (lo < hi) {
    u128 mid = lo + (hi - lo + 1) / 2;
    if (mid <= v / mid)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw InvalidArgument("lcm of non-positive values");
  auto g = static_cast<std::int64_t>(gcd128(u128(a), u128(b)));
  return checked_mul(a / g, b);
}

} // namespace disclab
