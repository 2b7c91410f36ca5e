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

// The stacked Hadamard lower-bound instance and its exact certification.
//
// For p <= 1/2 and t = floor(1/(2p)), A = [W | ... | W] (t blocks) with
// W = (J + H)/2 has wdisc_p(A) >= sqrt(n-1)/8. Square roots are never
// compared directly: a value v certifies the bound iff v >= 0 and
// v^2 >= (n-1)/64.

#include <cstddef>
#include <span>
#include <string>

#include "disclab/disc_engine.hpp"
#include "disclab/matrix.hpp"
#include "disclab/rational.hpp"

namespace disclab {

struct StackedConstruction {
  std::size_t n = 0;
  Rational requested_p;
  /// min(p, 1 - p); the instance is built and solved at this weight.
  Rational p;
  std::size_t t = 0;
  RatMatrix matrix;
  /// Rational lower approximation of sqrt(n-1)/8.
  Rational delta;
};

/// Throws InvalidArgument for p outside (0,1) or n not a power of two.
[[nodiscard]] StackedConstruction build_stacked(const Rational& p, std::size_t n,
                                                std::size_t max_cols = kDefaultMaxColumns);

struct LemmaCheck {
  Rational lhs;  // ||W z||_2^2
  Rational rhs;  // n/4 * sum_{i >= 2} z_i^2
  bool holds = false;
};

/// W must be square of power-of-two order.
[[nodiscard]] LemmaCheck check_hadamard_lemma(const RatMatrix& w, std::span<const Rational> z);

enum class BoundVariant { statement, proof };

/// Sound lower approximation of sqrt(n-1)/16 (statement) or sqrt(n-1)/8
/// (proof, n a power of two). Relative error below 1e-9.
[[nodiscard]] Rational lb_value(std::size_t n, BoundVariant variant);

/// v >= 0 and v^2 >= (n-1)/64, decided exactly.
[[nodiscard]] bool meets_proof_bound(const Rational& value, std::size_t n);

struct CertReport {
  std::string kind;  // "wdisc-lb" or "multicolor-lb"
  StackedConstruction construction;
  std::size_t k = 0;
  /// wdisc of the construction (both kinds).
  Rational exact_value;
  /// multicolor-lb only: odisc of k identical copies.
  Rational odisc_value;
  Rational bound;
  SelectionVector witness;
  Coloring coloring;
  std::uint64_t nodes = 0;
  bool pass = false;
};

[[nodiscard]] CertReport certify_wdisc_lb(const Rational& p, std::size_t n, const OracleConfig& config);

/// Checks odisc(A, ..., A) >= wdisc_{1/k}(A) and wdisc_{1/k}(A)^2 >= (n-1)/64
/// on the construction at p = 1/k.
[[nodiscard]] CertReport certify_multicolor_lb(std::size_t k, std::size_t n, const OracleConfig& config);

[[nodiscard]] bool is_power_of_two(std::size_t n) noexcept;

} // namespace disclab
