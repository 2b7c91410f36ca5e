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

#include "disclab/lb_constructions.hpp"

#include <bit>
#include <utility>
#include <vector>

#include "disclab/error.hpp"

namespace disclab {

namespace {

constexpr int kSqrtBits = 30;

int log2_exact(std::size_t n) { return std::countr_zero(n); }

using u128 = unsigned __int128;

/// 256-bit product as (high, low) halves.
std::pair<u128, u128> wide_mul(u128 a, u128 b) {
  constexpr u128 mask = ~std::uint64_t{0};
  u128 a0 = a & mask, a1 = a >> 64, b0 = b & mask, b1 = b >> 64;
  u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
  u128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
  u128 lo = (p00 & mask) | (mid << 64);
  u128 hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  return {hi, lo};
}

} // namespace

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

StackedConstruction build_stacked(const Rational& p, std::size_t n, std::size_t max_cols) {
  if (p.sign() <= 0 || p >= Rational(1)) throw InvalidArgument("p must lie in (0,1), got " + p.str());
  if (!is_power_of_two(n)) throw InvalidArgument("n must be a power of two, got " + std::to_string(n));
  StackedConstruction c;
  c.n = n;
  c.requested_p = p;
  c.p = p > Rational(1, 2) ? Rational(1) - p : p;
  c.t = static_cast<std::size_t>((Rational(1) / (Rational(2) * c.p)).floor());
  Rational pt = c.p * Rational(static_cast<std::int64_t>(c.t));
  if (pt < Rational(1, 4) || pt > Rational(1, 2)) throw VerificationError("p*t outside [1/4, 1/2]");
  c.matrix = stack_horizontal(lift_w(hadamard_sylvester(log2_exact(n))), c.t, max_cols);
  c.delta = lb_value(n, BoundVariant::proof);
  return c;
}

LemmaCheck check_hadamard_lemma(const RatMatrix& w, std::span<const Rational> z) {
  if (w.rows() != w.cols()) throw DimensionError("matrix must be square");
  if (!is_power_of_two(w.rows())) throw InvalidArgument("order must be a power of two");
  if (z.size() != w.cols()) throw DimensionError("vector length does not match order");
  LemmaCheck out;
  out.lhs = squared_norm(multiply(w, z));
  Rational tail;
  for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
  out.rhs = Rational(static_cast<std::int64_t>(w.rows()), 4) * tail;
  out.holds = out.lhs >= out.rhs;
  return out;
}

Rational lb_value(std::size_t n, BoundVariant variant) {
  if (n == 0) throw InvalidArgument("n must be positive");
  if (variant == BoundVariant::proof && !is_power_of_two(n))
    throw InvalidArgument("proof bound needs n a power of two, got " + std::to_string(n));
  // floor(sqrt((n-1) * 4^K)) / 2^K <= sqrt(n-1), short by less than 2^-K
  unsigned __int128 scaled = static_cast<unsigned __int128>(n - 1) << (2 * kSqrtBits);
  auto root = static_cast<std::int64_t>(isqrt(scaled));
  std::int64_t divisor = variant == BoundVariant::proof ? 8 : 16;
  return Rational(root, checked_mul(std::int64_t{1} << kSqrtBits, divisor));
}

bool meets_proof_bound(const Rational& value, std::size_t n) {
  if (n == 0) throw InvalidArgument("n must be positive");
  if (value.sign() < 0) return false;
  // (8 num)^2 >= (n - 1) den^2 without overflow
  u128 lhs_root = static_cast<u128>(value.num()) * 8;
  u128 den_sq = static_cast<u128>(value.den()) * static_cast<u128>(value.den());
  return wide_mul(lhs_root, lhs_root) >= wide_mul(den_sq, static_cast<u128>(n - 1));
}

CertReport certify_wdisc_lb(const Rational& p, std::size_t n, const OracleConfig& config) {
  CertReport r;
  r.kind = "wdisc-lb";
  r.construction = build_stacked(p, n);
  WdiscResult solved = wdisc_exact(r.construction.matrix, r.construction.p, config);
  r.exact_value = solved.value;
  r.witness = std::move(solved.witness);
  r.nodes = solved.nodes_explored;
  r.bound = lb_value(n, BoundVariant::proof);
  r.pass = meets_proof_bound(r.exact_value, n);
  return r;
}

CertReport certify_multicolor_lb(std::size_t k, std::size_t n, const OracleConfig& config) {
  if (k < 2) throw InvalidArgument("k must be at least 2");
  CertReport r;
  r.kind = "multicolor-lb";
  r.k = k;
  r.construction = build_stacked(Rational(1, static_cast<std::int64_t>(k)), n);
  const RatMatrix& a = r.construction.matrix;
  WdiscResult weighted = wdisc_exact(a, r.construction.p, config);
  std::vector<RatMatrix> copies(k, a);
  OdiscResult colored = odisc_exact(copies, config);
  r.exact_value = weighted.value;
  r.witness = std::move(weighted.witness);
  r.odisc_value = colored.value;
  r.coloring = std::move(colored.witness);
  r.nodes = weighted.nodes_explored + colored.nodes_explored;
  r.bound = lb_value(n, BoundVariant::proof);
  r.pass = r.odisc_value >= r.exact_value && meets_proof_bound(r.exact_value, n);
  return r;
}

} // namespace disclab
