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

#include "disclab/disc_engine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "disclab/error.hpp"
#include "disclab/kernels.hpp"
#include "disclab/parallel.hpp"

namespace disclab {

namespace {

using i64 = std::int64_t;
constexpr i64 kInf = std::numeric_limits<i64>::max();

// Subtrees handed to workers. Fixed so node counts never depend on the
// worker count.
constexpr std::size_t kMinTasks = 16;

void check_probability(const Rational& p) {
  if (p.sign() < 0 || p > Rational(1)) throw InvalidArgument("p must lie in [0,1], got " + p.str());
}

i64 common_denominator(std::span<const RatMatrix> blocks) {
  i64 d = 1;
  for (const auto& b : blocks)
    for (const auto& e : b.entries()) d = checked_lcm(d, e.den());
  return d;
}

/// Entries of A rescaled by a common denominator, column-major.
std::vector<i64> scaled_columns(const RatMatrix& a, i64 denom) {
  std::vector<i64> out(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational& e = a.at(i, j);
      out[j * a.rows() + i] = checked_mul(e.num(), denom / e.den());
    }
  return out;
}

// ---------------------------------------------------------------------------
// p-weighted discrepancy as integer row sums.
//
// With B = D*A integral and p = a/b, row i of A(p1 - x) scaled by D*b is
//   sum_j (x_j ? (a - b) B_ij : a B_ij).

struct WeightedProblem {
  std::size_t n = 0;
  std::size_t m = 0;
  i64 scale = 1;
  std::vector<i64> pick0;  // column-major contribution for x_j = 0
  std::vector<i64> pick1;  // ... for x_j = 1
  std::vector<i64> mass;   // column sums of B
  std::vector<std::size_t> nonzero_columns;

  const i64* col0(std::size_t j) const { return pick0.data() + j * n; }
  const i64* col1(std::size_t j) const { return pick1.data() + j * n; }
};

WeightedProblem make_weighted(const RatMatrix& a, const Rational& p) {
  check_probability(p);
  WeightedProblem w;
  w.n = a.rows();
  w.m = a.cols();
  i64 denom = common_denominator(std::span(&a, 1));
  w.scale = checked_mul(denom, p.den());
  std::vector<i64> b = scaled_columns(a, denom);
  w.pick0.resize(b.size());
  w.pick1.resize(b.size());
  w.mass.assign(w.m, 0);
  std::vector<i64> row_total(w.n, 0);
  i64 lower = p.num() - p.den();
  for (std::size_t j = 0; j < w.m; ++j) {
    for (std::size_t i = 0; i < w.n; ++i) {
      i64 v = b[j * w.n + i];
      w.pick0[j * w.n + i] = checked_mul(p.num(), v);
      w.pick1[j * w.n + i] = checked_mul(lower, v);
      w.mass[j] = checked_add(w.mass[j], v);
      row_total[i] = checked_add(row_total[i], checked_mul(p.den(), v));
    }
    if (w.mass[j] != 0) w.nonzero_columns.push_back(j);
  }
  // |acc| and |acc + suffix| are bounded by twice the row total.
  for (i64 t : row_total) (void)checked_mul(t, 2);
  return w;
}

/// Exhaustive-equivalent depth-first search over the columns in `order`.
class WeightedSearch {
public:
  WeightedSearch(const WeightedProblem& w, std::vector<std::size_t> order)
      : w_(w), order_(std::move(order)), k_(kernels::active()) {
    std::size_t depth = order_.size();
    lo_.assign((depth + 1) * w_.n, 0);
    hi_.assign((depth + 1) * w_.n, 0);
    for (std::size_t d = depth; d-- > 0;) {
      k_.add(lo(d), lo(d + 1), w_.col1(order_[d]), w_.n);
      k_.add(hi(d), hi(d + 1), w_.col0(order_[d]), w_.n);
    }
    acc_.assign((depth + 1) * w_.n, 0);
    choice_.assign(depth, 0);
  }

  /// Minimum reachable max-row value below a fixed prefix, considering only
  /// leaves strictly better than `bound`. Returns kInf when none is.
  i64 minimize(std::span<const std::uint8_t> prefix, i64 bound) {
    best_ = bound;
    found_ = false;
    replay(prefix);
    descend_min(prefix.size());
    return found_ ? best_ : kInf;
  }

  /// First leaf in 0-before-1 order whose value is at most `target`.
  bool first_at_most(i64 target, std::vector<std::uint8_t>& choices) {
    target_ = target;
    found_ = false;
    descend_first(0);
    if (found_) choices = choice_;
    return found_;
  }

  std::uint64_t nodes() const { return nodes_; }

private:
  i64* acc(std::size_t d) { return acc_.data() + d * w_.n; }
  const i64* lo(std::size_t d) const { return lo_.data() + d * w_.n; }
  const i64* hi(std::size_t d) const { return hi_.data() + d * w_.n; }
  i64* lo(std::size_t d) { return lo_.data() + d * w_.n; }
  i64* hi(std::size_t d) { return hi_.data() + d * w_.n; }

  void step(std::size_t d, std::uint8_t bit) {
    choice_[d] = bit;
    const i64* col = bit ? w_.col1(order_[d]) : w_.col0(order_[d]);
    k_.add(acc(d + 1), acc(d), col, w_.n);
  }

  void replay(std::span<const std::uint8_t> prefix) {
    for (std::size_t d = 0; d < prefix.size(); ++d) step(d, prefix[d]);
  }

  void descend_min(std::size_t d) {
    ++nodes_;
    i64 gap = k_.interval_gap(acc(d), lo(d), hi(d), w_.n);
    if (gap >= best_) return;
    if (d == order_.size()) {
      best_ = gap;
      found_ = true;
      return;
    }
    for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
      step(d, bit);
      descend_min(d + 1);
    }
  }

  void descend_first(std::size_t d) {
    ++nodes_;
    i64 gap = k_.interval_gap(acc(d), lo(d), hi(d), w_.n);
    if (gap > target_) return;
    if (d == order_.size()) {
      found_ = true;
      return;
    }
    for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
      step(d, bit);
      descend_first(d + 1);
      if (found_) return;
    }
  }

  const WeightedProblem& w_;
  std::vector<std::size_t> order_;
  const kernels::KernelSet& k_;
  std::vector<i64> lo_, hi_, acc_;
  std::vector<std::uint8_t> choice_;
  std::uint64_t nodes_ = 0;
  i64 best_ = kInf;
  i64 target_ = 0;
  bool found_ = false;
};

std::vector<std::size_t> by_descending_mass(const WeightedProblem& w, std::vector<std::size_t> cols) {
  std::stable_sort(cols.begin(), cols.end(), [&](std::size_t a, std::size_t b) { return w.mass[a] > w.mass[b]; });
  return cols;
}

struct GreedyOutcome {
  SelectionVector x;
  i64 value = 0;
};

GreedyOutcome run_greedy(const WeightedProblem& w) {
  const auto& k = kernels::active();
  std::vector<std::size_t> all(w.m);
  std::iota(all.begin(), all.end(), std::size_t{0});
  GreedyOutcome out;
  out.x.assign(w.m, 0);
  std::vector<i64> acc(w.n, 0), try0(w.n), try1(w.n);
  for (std::size_t j : by_descending_mass(w, all)) {
    k.add(try0.data(), acc.data(), w.col0(j), w.n);
    k.add(try1.data(), acc.data(), w.col1(j), w.n);
    if (k.max_abs(try1.data(), w.n) < k.max_abs(try0.data(), w.n)) {
      out.x[j] = 1;
      acc.swap(try1);
    } else {
      acc.swap(try0);
    }
  }
  out.value = k.max_abs(acc.data(), w.n);
  return out;
}

Rational checked_value(const RatMatrix& a, const Rational& p, const SelectionVector& x, i64 scaled, i64 scale) {
  Rational value(scaled, scale);
  Rational recheck = eval_weighted(a, p, x);
  if (recheck != value)
    throw VerificationError("witness re-evaluation mismatch: " + recheck.str() + " vs " + value.str());
  return value;
}

// ---------------------------------------------------------------------------
// Asymmetric k-color discrepancy as integer row sums.
//
// With B^s = D*A^s, row i of block s scaled by D*k is
//   sum_j B^s_ij - k * sum_{j : chi(j) = s} B^s_ij.

struct ColoringProblem {
  std::size_t k = 0;
  std::size_t rows = 0;  // all blocks stacked
  std::size_t m = 0;
  i64 scale = 1;
  std::vector<i64> contrib;  // [column][color][row]
  std::vector<i64> lo_col;   // [column][row], smallest contribution
  std::vector<i64> hi_col;   // [column][row], largest contribution
  std::vector<std::size_t> nonzero_columns;

  const i64* pick(std::size_t j, std::size_t s) const { return contrib.data() + (j * k + s) * rows; }
};

ColoringProblem make_coloring(std::span<const RatMatrix> blocks) {
  ColoringProblem c;
  c.k = blocks.size();
  c.m = blocks.front().cols();
  std::vector<std::size_t> offset;
  for (const auto& b : blocks) {
    if (b.cols() != c.m) throw DimensionError("blocks must share a column count");
    offset.push_back(c.rows);
    c.rows += b.rows();
  }
  i64 denom = common_denominator(blocks);
  i64 kk = static_cast<i64>(c.k);
  c.scale = checked_mul(denom, kk);
  c.contrib.assign(c.m * c.k * c.rows, 0);
  c.lo_col.assign(c.m * c.rows, 0);
  c.hi_col.assign(c.m * c.rows, 0);
  std::vector<i64> row_total(c.rows, 0);
  for (std::size_t s = 0; s < c.k; ++s) {
    std::vector<i64> b = scaled_columns(blocks[s], denom);
    std::size_t n = blocks[s].rows();
    for (std::size_t j = 0; j < c.m; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        i64 v = b[j * n + i];
        std::size_t r = offset[s] + i;
        i64 chosen = checked_mul(1 - kk, v);
        for (std::size_t color = 0; color < c.k; ++color)
          c.contrib[(j * c.k + color) * c.rows + r] = color == s ? chosen : v;
        c.lo_col[j * c.rows + r] = chosen;
        c.hi_col[j * c.rows + r] = v;
        row_total[r] = checked_add(row_total[r], checked_mul(kk, v));
      }
  }
  for (i64 t : row_total) (void)checked_mul(t, 2);
  for (std::size_t j = 0; j < c.m; ++j) {
    bool any = false;
    for (std::size_t r = 0; r < c.rows; ++r) any = any || c.hi_col[j * c.rows + r] != 0;
    if (any) c.nonzero_columns.push_back(j);
  }
  return c;
}

class ColoringSearch {
public:
  explicit ColoringSearch(const ColoringProblem& c) : c_(c), k_(kernels::active()) {
    const auto& order = c_.nonzero_columns;
    std::size_t depth = order.size();
    lo_.assign((depth + 1) * c_.rows, 0);
    hi_.assign((depth + 1) * c_.rows, 0);
    for (std::size_t d = depth; d-- > 0;) {
      k_.add(lo_.data() + d * c_.rows, lo_.data() + (d + 1) * c_.rows, c_.lo_col.data() + order[d] * c_.rows,
             c_.rows);
      k_.add(hi_.data() + d * c_.rows, hi_.data() + (d + 1) * c_.rows, c_.hi_col.data() + order[d] * c_.rows,
             c_.rows);
    }
    acc_.assign((depth + 1) * c_.rows, 0);
    choice_.assign(depth, 0);
  }

  /// Best leaf under the prefix; the first (lexicographically smallest)
  /// minimizer is kept.
  i64 minimize(std::span<const std::size_t> prefix, std::vector<std::size_t>& witness) {
    best_ = kInf;
    for (std::size_t d = 0; d < prefix.size(); ++d) step(d, prefix[d]);
    descend(prefix.size());
    if (best_ != kInf) witness = best_choice_;
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

private:
  void step(std::size_t d, std::size_t color) {
    choice_[d] = color;
    k_.add(acc_.data() + (d + 1) * c_.rows, acc_.data() + d * c_.rows, c_.pick(c_.nonzero_columns[d], color),
           c_.rows);
  }

  void descend(std::size_t d) {
    ++nodes_;
    i64 gap = k_.interval_gap(acc_.data() + d * c_.rows, lo_.data() + d * c_.rows, hi_.data() + d * c_.rows, c_.rows);
    if (gap >= best_) return;
    if (d == choice_.size()) {
      best_ = gap;
      best_choice_ = choice_;
      return;
    }
    for (std::size_t color = 0; color < c_.k; ++color) {
      step(d, color);
      descend(d + 1);
    }
  }

  const ColoringProblem& c_;
  const kernels::KernelSet& k_;
  std::vector<i64> lo_, hi_, acc_;
  std::vector<std::size_t> choice_, best_choice_;
  std::uint64_t nodes_ = 0;
  i64 best_ = kInf;
};

} // namespace

std::string_view to_string(OracleKind kind) noexcept {
  switch (kind) {
  case OracleKind::exact:
    return "exact";
  case OracleKind::greedy:
    return "greedy";
  case OracleKind::local_search:
    return "local-search";
  }
  return "exact";
}

OracleKind parse_oracle_kind(std::string_view text) {
  if (text == "exact") return OracleKind::exact;
  if (text == "greedy") return OracleKind::greedy;
  if (text == "local-search" || text == "local_search" || text == "heur") return OracleKind::local_search;
  throw InvalidArgument("unknown oracle kind: " + std::string(text));
}

Rational eval_weighted(const RatMatrix& a, const Rational& p, const SelectionVector& x) {
  check_probability(p);
  if (x.size() != a.cols())
    throw DimensionError("selection length " + std::to_string(x.size()) + " != columns " + std::to_string(a.cols()));
  return max_abs(multiply(a, centered(p, x)));
}

std::vector<Rational> per_color_discrepancy(std::span<const RatMatrix> blocks, const Coloring& chi) {
  if (blocks.empty()) throw DimensionError("no blocks");
  auto k = static_cast<int>(blocks.size());
  Rational share(1, k);
  std::vector<Rational> out;
  out.reserve(blocks.size());
  for (int s = 1; s <= k; ++s) {
    const RatMatrix& a = blocks[static_cast<std::size_t>(s - 1)];
    if (a.cols() != chi.size())
      throw DimensionError("coloring length " + std::to_string(chi.size()) + " != columns " +
                           std::to_string(a.cols()));
    std::vector<Rational> v(chi.size());
    for (std::size_t j = 0; j < chi.size(); ++j) {
      if (chi[j] < 1 || chi[j] > k) throw InvalidArgument("color out of range: " + std::to_string(chi[j]));
      v[j] = chi[j] == s ? share - Rational(1) : share;
    }
    out.push_back(max_abs(multiply(a, v)));
  }
  return out;
}

Rational eval_asymmetric(std::span<const RatMatrix> blocks, const Coloring& chi) {
  Rational best;
  for (const auto& r : per_color_discrepancy(blocks, chi)) best = max(best, r);
  return best;
}

WdiscResult wdisc_exact(const RatMatrix& a, const Rational& p, const OracleConfig& config) {
  WeightedProblem w = make_weighted(a, p);
  const auto& cols = w.nonzero_columns;
  if (cols.size() > config.exact_width_cap)
    throw CapExceeded("exact search width " + std::to_string(cols.size()) + " exceeds cap " +
                      std::to_string(config.exact_width_cap));

  // Pass 1: optimal value, searching heavy columns first.
  i64 best = run_greedy(w).value;
  std::vector<std::size_t> order = by_descending_mass(w, cols);
  std::size_t prefix_depth = 0;
  while (prefix_depth < order.size() && (std::size_t{1} << prefix_depth) < kMinTasks) ++prefix_depth;
  std::size_t tasks = std::size_t{1} << prefix_depth;
  std::vector<i64> task_best(tasks, kInf);
  std::vector<std::uint64_t> task_nodes(tasks, 0);
  const i64 incumbent = best;
  run_tasks(tasks, config.threads, [&](std::size_t t) {
    std::vector<std::uint8_t> prefix(prefix_depth);
    for (std::size_t d = 0; d < prefix_depth; ++d) prefix[d] = (t >> (prefix_depth - 1 - d)) & 1U;
    WeightedSearch search(w, order);
    task_best[t] = search.minimize(prefix, incumbent);
    task_nodes[t] = search.nodes();
  });
  std::uint64_t nodes = 0;
  for (std::size_t t = 0; t < tasks; ++t) {
    best = std::min(best, task_best[t]);
    nodes += task_nodes[t];
  }

  // Pass 2: lexicographically smallest witness attaining it, index order.
  WeightedSearch lex(w, cols);
  std::vector<std::uint8_t> choices;
  if (!lex.first_at_most(best, choices)) throw VerificationError("optimal value not reattained");
  nodes += lex.nodes();

  WdiscResult r;
  r.witness.assign(w.m, 0);
  for (std::size_t d = 0; d < cols.size(); ++d) r.witness[cols[d]] = choices[d];
  r.value = checked_value(a, p, r.witness, best, w.scale);
  r.nodes_explored = nodes;
  r.exact = true;
  return r;
}

OdiscResult odisc_exact(std::span<const RatMatrix> blocks, const OracleConfig& config) {
  if (blocks.empty()) throw DimensionError("no blocks");
  ColoringProblem c = make_coloring(blocks);
  std::size_t width = c.nonzero_columns.size();
  std::uint64_t space = 1;
  for (std::size_t j = 0; j < width; ++j) {
    if (space > config.enumeration_cap / c.k) {
      throw CapExceeded(std::to_string(c.k) + "^" + std::to_string(width) + " colorings exceed cap " +
                        std::to_string(config.enumeration_cap));
    }
    space *= c.k;
  }

  OdiscResult r;
  r.exact = true;
  r.witness.assign(c.m, 1);
  if (c.k == 1) {
    r.value = Rational(0);
    r.nodes_explored = 1;
    return r;
  }

  std::size_t prefix_depth = 0;
  std::size_t tasks = 1;
  while (prefix_depth < width && tasks < kMinTasks) {
    ++prefix_depth;
    tasks *= c.k;
  }
  std::vector<i64> task_best(tasks, kInf);
  std::vector<std::vector<std::size_t>> task_witness(tasks);
  std::vector<std::uint64_t> task_nodes(tasks, 0);
  run_tasks(tasks, config.threads, [&](std::size_t t) {
    std::vector<std::size_t> prefix(prefix_depth);
    std::size_t rest = t;
    for (std::size_t d = prefix_depth; d-- > 0;) {
      prefix[d] = rest % c.k;
      rest /= c.k;
    }
    ColoringSearch search(c);
    task_best[t] = search.minimize(prefix, task_witness[t]);
    task_nodes[t] = search.nodes();
  });

  i64 best = kInf;
  std::size_t winner = 0;
  for (std::size_t t = 0; t < tasks; ++t) {
    r.nodes_explored += task_nodes[t];
    if (task_best[t] < best) {
      best = task_best[t];
      winner = t;
    }
  }
  for (std::size_t d = 0; d < width; ++d)
    r.witness[c.nonzero_columns[d]] = static_cast<int>(task_witness[winner][d]) + 1;
  r.value = Rational(best, c.scale);
  Rational recheck = eval_asymmetric(blocks, r.witness);
  if (recheck != r.value)
    throw VerificationError("coloring re-evaluation mismatch: " + recheck.str() + " vs " + r.value.str());
  return r;
}

WdiscResult wdisc_greedy(const RatMatrix& a, const Rational& p) {
  WeightedProblem w = make_weighted(a, p);
  GreedyOutcome g = run_greedy(w);
  WdiscResult r;
  r.witness = std::move(g.x);
  r.value = checked_value(a, p, r.witness, g.value, w.scale);
  r.nodes_explored = w.m;
  r.exact = false;
  return r;
}

WdiscResult wdisc_heuristic(const RatMatrix& a, const Rational& p, const OracleConfig& config) {
  WeightedProblem w = make_weighted(a, p);
  const auto& k = kernels::active();
  const std::size_t n = w.n;
  const std::size_t m = w.m;
  std::int64_t budget = std::max<std::int64_t>(config.iterations, 1);

  // flipping x_j from 0 to 1 adds col1 - col0 = -b * B_j
  std::vector<i64> delta(m * n);
  for (std::size_t j = 0; j < m; ++j) k.sub(delta.data() + j * n, w.col1(j), w.col0(j), n);

  std::mt19937_64 rng(config.seed);
  SelectionVector best_x(m, 0);
  i64 best = kInf;
  std::vector<i64> acc(n), trial(n), pair(n), best_move(n);
  std::int64_t steps = 0;

  while (steps < budget) {
    ++steps;
    SelectionVector x(m, 0);
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t j = 0; j < m; ++j) {
      x[j] = static_cast<std::uint8_t>(rng() % static_cast<std::uint64_t>(p.den()) <
                                       static_cast<std::uint64_t>(p.num()));
      k.add(acc.data(), acc.data(), x[j] ? w.col1(j) : w.col0(j), n);
    }
    i64 score = k.max_abs(acc.data(), n);

    while (steps < budget) {
      i64 move_score = score;
      std::size_t move_a = m, move_b = m;
      for (std::size_t j = 0; j < m; ++j) {
        if (x[j])
          k.sub(trial.data(), acc.data(), delta.data() + j * n, n);
        else
          k.add(trial.data(), acc.data(), delta.data() + j * n, n);
        i64 s = k.max_abs(trial.data(), n);
        if (s < move_score) {
          move_score = s;
          move_a = j;
          move_b = m;
          best_move = trial;
        }
      }
      for (std::size_t on = 0; on < m; ++on) {
        if (!x[on]) continue;
        k.sub(trial.data(), acc.data(), delta.data() + on * n, n);
        for (std::size_t off = 0; off < m; ++off) {
          if (x[off]) continue;
          k.add(pair.data(), trial.data(), delta.data() + off * n, n);
          i64 s = k.max_abs(pair.data(), n);
          if (s < move_score) {
            move_score = s;
            move_a = on;
            move_b = off;
            best_move = pair;
          }
        }
      }
      if (move_a == m) break;
      ++steps;
      x[move_a] ^= 1U;
      if (move_b != m) x[move_b] ^= 1U;
      acc = best_move;
      score = move_score;
    }

    if (score < best) {
      best = score;
      best_x = x;
    }
  }

  WdiscResult r;
  r.witness = std::move(best_x);
  r.value = checked_value(a, p, r.witness, best, w.scale);
  r.nodes_explored = static_cast<std::uint64_t>(steps);
  r.exact = false;
  return r;
}

WdiscResult oracle_solve(const RatMatrix& a, const Rational& p, const OracleConfig& config) {
  switch (config.kind) {
  case OracleKind::exact:
    return wdisc_exact(a, p, config);
  case OracleKind::greedy:
    return wdisc_greedy(a, p);
  case OracleKind::local_search:
    return wdisc_heuristic(a, p, config);
  }
  throw InvalidArgument("unknown oracle kind");
}

} // namespace disclab
