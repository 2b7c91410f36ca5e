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

#include <doctest.h>

#include <cmath>
#include <random>

#include "disclab/error.hpp"
#include "disclab/lb_constructions.hpp"
#include "oracles.hpp"

using namespace disclab;

namespace {

RatMatrix w_of(std::size_t n) {
  int e = 0;
  while ((std::size_t{1} << e) < n) ++e;
  return lift_w(hadamard_sylvester(e));
}

/// den_factor num^2 <= scale den^2 in 128-bit integers; fine for lb_value sizes.
bool square_at_most(const Rational& r, std::int64_t scale, std::int64_t den_factor) {
  __int128 num = r.num(), den = r.den();
  return num * num * den_factor <= static_cast<__int128>(scale) * den * den;
}

std::vector<Rational> ints(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

} // namespace

TEST_CASE("build_stacked examples") {
  StackedConstruction a = build_stacked(Rational(1, 2), 2);
  CHECK(a.t == 1);
  CHECK(a.matrix == w_of(2));
  CHECK(a.p * Rational(static_cast<std::int64_t>(a.t)) == Rational(1, 2));

  StackedConstruction b = build_stacked(Rational(1, 5), 2);
  CHECK(b.t == 2);
  CHECK(b.matrix == stack_horizontal(w_of(2), 2));
  CHECK(b.p * Rational(2) == Rational(2, 5));

  StackedConstruction c = build_stacked(Rational(2, 3), 4);
  CHECK(c.requested_p == Rational(2, 3));
  CHECK(c.p == Rational(1, 3));
  CHECK(c.t == 1);
  CHECK(c.matrix == w_of(4));

  CHECK_THROWS_AS((void)build_stacked(Rational(0), 2), InvalidArgument);
  CHECK_THROWS_AS((void)build_stacked(Rational(1), 2), InvalidArgument);
  CHECK_THROWS_AS((void)build_stacked(Rational(1, 3), 3), InvalidArgument);
}

TEST_CASE("p times t stays in [1/4, 1/2]") {
  for (std::int64_t den = 2; den <= 40; ++den)
    for (std::int64_t num = 1; num < den; ++num) {
      StackedConstruction s = build_stacked(Rational(num, den), 1);
      Rational pt = s.p * Rational(static_cast<std::int64_t>(s.t));
      CHECK(pt >= Rational(1, 4));
      CHECK(pt <= Rational(1, 2));
    }
}

TEST_CASE("hadamard lemma examples") {
  LemmaCheck a = check_hadamard_lemma(w_of(2), ints({1, 0}));
  CHECK(a.lhs == Rational(2));
  CHECK(a.rhs == Rational(0));
  CHECK(a.holds);
  LemmaCheck b = check_hadamard_lemma(w_of(2), ints({0, 1}));
  CHECK(b.lhs == Rational(1));
  CHECK(b.rhs == Rational(1, 2));
  CHECK(b.holds);

  // W4 (0,1,1,1) = (3,1,1,1) by direct multiplication
  LemmaCheck c = check_hadamard_lemma(w_of(4), ints({0, 1, 1, 1}));
  CHECK(c.lhs == Rational(12));
  CHECK(c.rhs == Rational(3));
  CHECK(c.holds);

  CHECK_THROWS_AS((void)check_hadamard_lemma(stack_horizontal(w_of(2), 2), ints({1, 0, 0, 0})), DimensionError);
  CHECK_THROWS_AS((void)check_hadamard_lemma(w_of(2), ints({1})), DimensionError);
}

TEST_CASE("hadamard lemma on random integer vectors") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {2, 4, 8, 16, 32}) {
    RatMatrix w = w_of(n);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Rational> z(n);
      for (auto& v : z) v = Rational(static_cast<std::int64_t>(rng() % 17) - 8);
      LemmaCheck lc = check_hadamard_lemma(w, z);
      // recompute both sides by hand
      Rational lhs(0), rhs(0);
      for (std::size_t i = 0; i < n; ++i) {
        Rational s(0);
        for (std::size_t j = 0; j < n; ++j) s += w.at(i, j) * z[j];
        lhs += s * s;
        if (i > 0) rhs += z[i] * z[i];
      }
      rhs *= Rational(static_cast<std::int64_t>(n), 4);
      CHECK(lc.lhs == lhs);
      CHECK(lc.rhs == rhs);
      CHECK(lc.holds);
    }
  }
}

TEST_CASE("lb_value examples") {
  CHECK(lb_value(1, BoundVariant::statement) == Rational(0));
  CHECK(lb_value(2, BoundVariant::proof) == Rational(1, 8));
  CHECK(lb_value(2, BoundVariant::statement) == Rational(1, 16));
  CHECK(lb_value(17, BoundVariant::statement) == Rational(1, 4));

  Rational r = lb_value(4, BoundVariant::proof);
  CHECK(square_at_most(r, 3, 64));
  CHECK(std::sqrt(3.0L) / 8 - static_cast<long double>(r.num()) / r.den() < 1e-9L);
  CHECK_THROWS_AS((void)lb_value(3, BoundVariant::proof), InvalidArgument);
  CHECK_THROWS_AS((void)lb_value(0, BoundVariant::statement), InvalidArgument);
}

TEST_CASE("lb_value is a tight lower approximation") {
  for (std::size_t n = 1; n <= 1000; ++n) {
    Rational r = lb_value(n, BoundVariant::statement);
    CHECK(square_at_most(r, static_cast<std::int64_t>(n) - 1, 256));
    long double exact = std::sqrt(static_cast<long double>(n - 1)) / 16;
    CHECK(exact - static_cast<long double>(r.num()) / r.den() < 1e-9L * (exact + 1));
  }
}

TEST_CASE("meets_proof_bound compares squares") {
  CHECK(meets_proof_bound(Rational(1, 8), 2));
  CHECK_FALSE(meets_proof_bound(Rational(1, 9), 2));
  CHECK(meets_proof_bound(Rational(1), 4));
  CHECK(meets_proof_bound(Rational(3, 8), 10));
  CHECK_FALSE(meets_proof_bound(Rational(374, 1000), 10));
  // huge denominators compare exactly instead of overflowing
  std::int64_t big = std::int64_t{1} << 62;
  CHECK(meets_proof_bound(Rational(big - 1, big), 64));
  CHECK_FALSE(meets_proof_bound(Rational(big - 1, big), 65));
  CHECK_FALSE(meets_proof_bound(Rational(-1), 2));
  // sqrt(3)/8 is irrational; its lower approximation just misses
  CHECK_FALSE(meets_proof_bound(lb_value(4, BoundVariant::proof), 4));
}

TEST_CASE("certify_wdisc_lb examples") {
  OracleConfig cfg;
  CertReport a = certify_wdisc_lb(Rational(1, 3), 2, cfg);
  CHECK(a.exact_value == Rational(1, 3));
  CHECK(a.bound == Rational(1, 8));
  CHECK(a.pass);
  CertReport b = certify_wdisc_lb(Rational(1, 5), 2, cfg);
  CHECK(b.exact_value == Rational(2, 5));
  CHECK(b.pass);
  CertReport c = certify_wdisc_lb(Rational(1, 2), 4, cfg);
  CHECK(c.exact_value == Rational(1));
  CHECK(c.pass);
}

TEST_CASE("certify_multicolor_lb examples") {
  OracleConfig cfg;
  CertReport a = certify_multicolor_lb(2, 2, cfg);
  CHECK(a.odisc_value == Rational(1, 2));
  CHECK(a.exact_value == Rational(1, 2));
  CHECK(a.pass);
  CertReport b = certify_multicolor_lb(3, 2, cfg);
  CHECK(b.construction.t == 1);
  CHECK(b.exact_value == Rational(1, 3));
  CHECK(b.odisc_value >= b.exact_value);
  CHECK(b.pass);
  CertReport c = certify_multicolor_lb(3, 4, cfg);
  CHECK(c.coloring.size() == 4);
  CHECK(c.odisc_value >= c.bound);
  CHECK(c.pass);
  CHECK_THROWS_AS((void)certify_multicolor_lb(1, 2, cfg), InvalidArgument);
}

TEST_CASE("every coordinate of pt - z is at least 1/4 away from zero") {
  for (Rational p : {Rational(1, 3), Rational(1, 5), Rational(1, 7)}) {
    StackedConstruction s = build_stacked(p, 2);
    Rational pt = s.p * Rational(static_cast<std::int64_t>(s.t));
    for (std::size_t z = 0; z <= s.t; ++z) CHECK(abs(pt - Rational(static_cast<std::int64_t>(z))) >= Rational(1, 4));
  }
}

TEST_CASE("certified witnesses satisfy the norm chain") {
  OracleConfig cfg;
  for (std::size_t n : {2, 4, 8}) {
    for (Rational p : {Rational(1, 2), Rational(1, 3), Rational(1, 5)}) {
      CertReport r = certify_wdisc_lb(p, n, cfg);
      const auto& sc = r.construction;
      auto lhs = multiply(sc.matrix, centered(sc.p, r.witness));
      MultiplicityVector z = transfer_z(r.witness, n, sc.t);
      std::vector<Rational> v(n);
      Rational pt = sc.p * Rational(static_cast<std::int64_t>(sc.t));
      for (std::size_t i = 0; i < n; ++i) v[i] = pt - Rational(z[i]);
      auto rhs = multiply(w_of(n), v);
      CHECK(squared_norm(lhs) == squared_norm(rhs));
      Rational inf = max_abs(lhs);
      CHECK(inf == r.exact_value);
      CHECK(inf * inf * Rational(static_cast<std::int64_t>(n)) >= squared_norm(lhs));
    }
  }
}
