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

// Recursive color splitting for asymmetric discrepancy.
//
// Colors [lo, hi) over a column subset S are split into k1 = floor(k/2) low
// colors and k2 = k - k1 high colors. A weighted-discrepancy oracle at
// p = k1/k on the blocks of those colors, stacked vertically and restricted
// to S, picks S1 (x = 1) for the low half and S2 = S \ S1 for the high half.
// With d the oracle's value,
//
//   1/k 1(S) - 1/k1 1(S1) = (1/k1) (p 1(S) - x)
//
// so each color's discrepancy grows by at most d/k1 (low) or d/k2 (high)
// over its discrepancy inside the child. The certificate records these
// telescoping bounds; they are exact consequences of measured values.

#include <cstddef>
#include <span>
#include <vector>

#include "disclab/disc_engine.hpp"
#include "disclab/matrix.hpp"
#include "disclab/rational.hpp"

namespace disclab {

struct RecursionConfig {
  OracleConfig oracle;
  /// Reporting constant for reference_bound only.
  Rational zeta = Rational(100);
};

struct CertificateNode {
  /// 1-based inclusive color range.
  int color_lo = 1;
  int color_hi = 1;
  /// Global column indices in scope, ascending.
  std::vector<std::size_t> columns;
  /// Internal nodes only.
  int k1 = 0;
  int k2 = 0;
  Rational p;
  Rational oracle_value;
  SelectionVector selection;  // oracle output over `columns`
  std::vector<CertificateNode> children;  // empty (leaf) or {low, high}
  /// Bound for each color in range, index color - color_lo.
  std::vector<Rational> bounds;

  [[nodiscard]] bool is_leaf() const noexcept { return children.empty(); }
};

struct RecursiveColoring {
  Coloring coloring;
  CertificateNode certificate;
};

/// blocks[s] is the matrix measuring color s+1; all share a column count.
[[nodiscard]] RecursiveColoring odisc_color(std::span<const RatMatrix> blocks, const RecursionConfig& config);

/// Sound upper approximation of zeta * (1 - 1/sqrt(k)) * sqrt(n1), within 1e-6
/// for moderate zeta. Reporting only.
[[nodiscard]] Rational reference_bound(std::size_t k, std::size_t n1, const RecursionConfig& config);

struct CertificateAudit {
  std::size_t nodes = 0;
  /// Child column sets do not partition the parent's.
  std::size_t partition_violations = 0;
  /// Some block in scope has ||A^s (p 1(S) - x)||_inf > oracle value.
  std::size_t domination_violations = 0;
  /// Measured in-scope discrepancy of a color exceeds its bound.
  std::size_t bound_violations = 0;
  /// Bounds not equal to child bound + d/k1 (or d/k2).
  std::size_t telescoping_violations = 0;

  [[nodiscard]] bool ok() const noexcept {
    return partition_violations + domination_violations + bound_violations + telescoping_violations == 0;
  }
};

/// Re-derives every claim in the certificate from the blocks and coloring.
[[nodiscard]] CertificateAudit audit_certificate(std::span<const RatMatrix> blocks, const Coloring& coloring,
                                                 const CertificateNode& root);

} // namespace disclab
