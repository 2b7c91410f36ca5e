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

#include "disclab/asym_recursive.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "disclab/error.hpp"

namespace disclab {

namespace {

CertificateNode split(std::span<const RatMatrix> blocks, int lo, int hi, std::vector<std::size_t> columns,
                      Coloring& coloring, const RecursionConfig& config) {
  CertificateNode node;
  node.color_lo = lo;
  node.color_hi = hi;
  node.columns = std::move(columns);
  int k = hi - lo + 1;
  if (k == 1) {
    for (std::size_t j : node.columns) coloring[j] = lo;
    node.bounds = {Rational(0)};
    return node;
  }

  node.k1 = k / 2;
  node.k2 = k - node.k1;
  node.p = Rational(node.k1, k);
  std::vector<std::size_t> low_cols, high_cols;
  if (!node.columns.empty()) {
    std::vector<RatMatrix> scoped;
    scoped.reserve(static_cast<std::size_t>(k));
    for (int s = lo; s <= hi; ++s) scoped.push_back(blocks[static_cast<std::size_t>(s - 1)].select_columns(node.columns));
    WdiscResult r = oracle_solve(stack_vertical(scoped), node.p, config.oracle);
    node.oracle_value = r.value;
    node.selection = std::move(r.witness);
    for (std::size_t c = 0; c < node.columns.size(); ++c)
      (node.selection[c] ? low_cols : high_cols).push_back(node.columns[c]);
  }

  node.children.push_back(split(blocks, lo, lo + node.k1 - 1, std::move(low_cols), coloring, config));
  node.children.push_back(split(blocks, lo + node.k1, hi, std::move(high_cols), coloring, config));
  Rational low_step = node.oracle_value / Rational(node.k1);
  Rational high_step = node.oracle_value / Rational(node.k2);
  for (const auto& b : node.children[0].bounds) node.bounds.push_back(b + low_step);
  for (const auto& b : node.children[1].bounds) node.bounds.push_back(b + high_step);
  return node;
}

/// ||A^s (1/k 1(S) - 1(chi^-1(s) within S))||_inf for color s on scope S.
Rational scoped_discrepancy(const RatMatrix& a, const std::vector<std::size_t>& scope, const Coloring& coloring,
                            int color, int k) {
  std::vector<Rational> v(a.cols());
  Rational share(1, k);
  for (std::size_t j : scope) v[j] = coloring[j] == color ? share - Rational(1) : share;
  return max_abs(multiply(a, v));
}

void audit(std::span<const RatMatrix> blocks, const Coloring& coloring, const CertificateNode& node,
           CertificateAudit& out) {
  ++out.nodes;
  int k = node.color_hi - node.color_lo + 1;
  if (node.bounds.size() != static_cast<std::size_t>(k)) {
    ++out.telescoping_violations;
    return;
  }
  for (int s = node.color_lo; s <= node.color_hi; ++s) {
    Rational measured = scoped_discrepancy(blocks[static_cast<std::size_t>(s - 1)], node.columns, coloring, s, k);
    if (measured > node.bounds[static_cast<std::size_t>(s - node.color_lo)]) ++out.bound_violations;
  }
  if (node.is_leaf()) {
    if (k != 1) ++out.partition_violations;
    for (std::size_t j : node.columns)
      if (coloring[j] != node.color_lo) ++out.partition_violations;
    if (!node.bounds[0].is_zero()) ++out.telescoping_violations;
    return;
  }
  if (node.children.size() != 2) {
    ++out.partition_violations;
    return;
  }
  const auto& low = node.children[0];
  const auto& high = node.children[1];

  // children partition the scope, agreeing with the oracle selection
  std::vector<std::size_t> merged = low.columns;
  merged.insert(merged.end(), high.columns.begin(), high.columns.end());
  std::sort(merged.begin(), merged.end());
  if (merged != node.columns) ++out.partition_violations;
  if (!node.columns.empty()) {
    if (node.selection.size() != node.columns.size()) {
      ++out.partition_violations;
    } else {
      std::vector<std::size_t> picked;
      for (std::size_t c = 0; c < node.columns.size(); ++c)
        if (node.selection[c]) picked.push_back(node.columns[c]);
      if (picked != low.columns) ++out.partition_violations;
    }
  }

  // every in-scope block is dominated by the stacked oracle value
  if (!node.columns.empty()) {
    std::vector<Rational> v(blocks.front().cols());
    for (std::size_t c = 0; c < node.columns.size(); ++c)
      v[node.columns[c]] = node.selection[c] ? node.p - Rational(1) : node.p;
    for (int s = node.color_lo; s <= node.color_hi; ++s)
      if (max_abs(multiply(blocks[static_cast<std::size_t>(s - 1)], v)) > node.oracle_value)
        ++out.domination_violations;
  }

  Rational low_step = node.oracle_value / Rational(node.k1);
  Rational high_step = node.oracle_value / Rational(node.k2);
  if (low.bounds.size() + high.bounds.size() != node.bounds.size()) {
    ++out.telescoping_violations;
  } else {
    for (std::size_t i = 0; i < low.bounds.size(); ++i)
      if (node.bounds[i] != low.bounds[i] + low_step) ++out.telescoping_violations;
    for (std::size_t i = 0; i < high.bounds.size(); ++i)
      if (node.bounds[low.bounds.size() + i] != high.bounds[i] + high_step) ++out.telescoping_violations;
  }
  audit(blocks, coloring, low, out);
  audit(blocks, coloring, high, out);
}

} // namespace

RecursiveColoring odisc_color(std::span<const RatMatrix> blocks, const RecursionConfig& config) {
  if (blocks.empty()) throw InvalidArgument("need at least one block");
  std::size_t m = blocks.front().cols();
  for (const auto& b : blocks)
    if (b.cols() != m) throw DimensionError("blocks must share a column count");
  RecursiveColoring out;
  out.coloring.assign(m, 0);
  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), std::size_t{0});
  out.certificate = split(blocks, 1, static_cast<int>(blocks.size()), std::move(all), out.coloring, config);
  return out;
}

Rational reference_bound(std::size_t k, std::size_t n1, const RecursionConfig& config) {
  if (k == 0 || n1 == 0) throw InvalidArgument("k and n1 must be positive");
  if (k == 1) return Rational(0);
  // zeta * (sqrt(n1) - sqrt(n1 k)/k), rounding sqrt(n1) up and sqrt(n1 k) down
  constexpr int bits = 32;
  using u128 = unsigned __int128;
  auto up = [&](u128 v) {
    u128 scaled = v << (2 * bits);
    u128 r = isqrt(scaled);
    return r * r == scaled ? r : r + 1;
  };
  u128 root_n = up(n1);
  u128 root_nk = isqrt(u128(n1) * k << (2 * bits));
  auto denom = std::int64_t{1} << bits;
  Rational sqrt_n(static_cast<std::int64_t>(root_n), denom);
  Rational sqrt_nk(static_cast<std::int64_t>(root_nk), denom);
  return config.zeta * (sqrt_n - sqrt_nk / Rational(static_cast<std::int64_t>(k)));
}

CertificateAudit audit_certificate(std::span<const RatMatrix> blocks, const Coloring& coloring,
                                   const CertificateNode& root) {
  CertificateAudit out;
  for (int c : coloring)
    if (c < 1 || c > static_cast<int>(blocks.size())) ++out.partition_violations;
  if (!out.ok()) return out;
  audit(blocks, coloring, root, out);
  return out;
}

} // namespace disclab
