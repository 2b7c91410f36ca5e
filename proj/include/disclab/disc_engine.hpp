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

// Evaluators and solvers for p-weighted, multicolor and asymmetric
// discrepancy.
//
//   wdisc_p(A)        = min_x ||A (p 1 - x)||_inf,  x in {0,1}^m
//   odisc(A^1..A^k)   = min_chi max_s ||A^s (1/k 1 - 1(chi^-1(s)))||_inf
//
// Multicolor discrepancy of a single matrix is odisc with k identical
// blocks. Exact solvers work on integer-rescaled row sums (see kernels.hpp)
// and re-evaluate their witness in rational arithmetic before returning.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "disclab/matrix.hpp"
#include "disclab/rational.hpp"

namespace disclab {

enum class OracleKind { exact, greedy, local_search };

[[nodiscard]] std::string_view to_string(OracleKind kind) noexcept;
/// "exact", "greedy", "local-search"; throws InvalidArgument otherwise.
[[nodiscard]] OracleKind parse_oracle_kind(std::string_view text);

struct OracleConfig {
  OracleKind kind = OracleKind::exact;
  /// Local-search step budget (initializations plus accepted moves).
  std::int64_t iterations = 1000;
  std::uint64_t seed = 0;
  /// Largest number of non-zero columns the exact 0/1 search accepts.
  std::size_t exact_width_cap = 24;
  /// Largest k^m the exact coloring search accepts.
  std::uint64_t enumeration_cap = 20'000'000;
  /// 0 = all cores. Results never depend on this.
  unsigned threads = 0;
};

struct WdiscResult {
  Rational value;
  SelectionVector witness;
  std::uint64_t nodes_explored = 0;
  bool exact = false;
};

struct OdiscResult {
  Rational value;
  Coloring witness;
  std::uint64_t nodes_explored = 0;
  bool exact = false;
};

/// ||A (p 1 - x)||_inf, exact.
[[nodiscard]] Rational eval_weighted(const RatMatrix& a, const Rational& p, const SelectionVector& x);

/// ||A^s (1/k 1 - 1(chi^-1(s)))||_inf for every color s (index s-1).
[[nodiscard]] std::vector<Rational> per_color_discrepancy(std::span<const RatMatrix> blocks, const Coloring& chi);

/// max over colors of per_color_discrepancy; k is the number of blocks.
[[nodiscard]] Rational eval_asymmetric(std::span<const RatMatrix> blocks, const Coloring& chi);

/// Branch and bound over {0,1}^m. The witness is the lexicographically
/// smallest minimizer. Throws CapExceeded above exact_width_cap.
[[nodiscard]] WdiscResult wdisc_exact(const RatMatrix& a, const Rational& p, const OracleConfig& config);

/// Depth-first search over all k^m colorings in mixed-radix order with
/// interval pruning. The witness is the lexicographically smallest
/// minimizer. Throws CapExceeded when k^m exceeds enumeration_cap.
[[nodiscard]] OdiscResult odisc_exact(std::span<const RatMatrix> blocks, const OracleConfig& config);

/// One pass in descending column-mass order, each column taking the choice
/// with the smaller running max-row value.
[[nodiscard]] WdiscResult wdisc_greedy(const RatMatrix& a, const Rational& p);

/// Randomized restarts (each column selected with probability p) followed
/// by steepest descent over single flips and 1/0 swaps. Deterministic for
/// a given seed and budget.
[[nodiscard]] WdiscResult wdisc_heuristic(const RatMatrix& a, const Rational& p, const OracleConfig& config);

/// Dispatch on config.kind. exact never falls back silently.
[[nodiscard]] WdiscResult oracle_solve(const RatMatrix& a, const Rational& p, const OracleConfig& config);

} // namespace disclab
