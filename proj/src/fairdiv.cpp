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

#include "disclab/fairdiv.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <string>

#include "disclab/disc_engine.hpp"
#include "disclab/error.hpp"
#include "disclab/parallel.hpp"

namespace disclab {

namespace {

using i64 = std::int64_t;

constexpr std::size_t kMinTasks = 16;

// ---------------------------------------------------------------------------
// Integer view of an instance for the min-c search: each agent's utilities
// rescaled by that agent's common denominator.

struct IntAgent {
  std::size_t group = 0;
  std::vector<i64> value;
  i64 total = 0;
  std::vector<std::size_t> by_value;  // descending, ties by index
};

std::vector<std::size_t> descending_order(std::span<const Rational> u) {
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  return order;
}

std::vector<IntAgent> integer_agents(const FairDivInstance& inst) {
  std::vector<IntAgent> out;
  auto k = static_cast<i64>(inst.k);
  for (std::size_t i = 0; i < inst.k; ++i)
    for (const auto& u : inst.utilities[i]) {
      IntAgent a;
      a.group = i;
      i64 d = 1;
      for (const auto& r : u) d = checked_lcm(d, r.den());
      for (const auto& r : u) {
        a.value.push_back(checked_mul(r.num(), d / r.den()));
        a.total = checked_add(a.total, a.value.back());
      }
      (void)checked_mul(a.total, checked_mul(k, 2));
      a.by_value = descending_order(u);
      out.push_back(std::move(a));
    }
  return out;
}

/// Goods to drop from bundle `other` before `a` stops envying it from `own`.
std::int64_t envy_need(const IntAgent& a, std::span<const std::size_t> owner, std::span<const i64> sums,
                       std::size_t own, std::size_t other) {
  i64 deficit = sums[other] - sums[own];
  if (deficit <= 0) return 0;
  i64 acc = 0;
  std::int64_t c = 0;
  for (std::size_t g : a.by_value) {
    if (owner[g] != other) continue;
    acc += a.value[g];
    ++c;
    if (acc >= deficit) return c;
  }
  return c;  // unreachable: dropping all of `other` always suffices
}

/// Goods outside `own` that `a` must count to reach its proportional share.
std::int64_t prop_need(const IntAgent& a, std::span<const std::size_t> owner, std::span<const i64> sums,
                       std::size_t own, i64 k) {
  i64 deficit = a.total - k * sums[own];
  if (deficit <= 0) return 0;
  i64 acc = 0;
  std::int64_t c = 0;
  for (std::size_t g : a.by_value) {
    if (owner[g] == own) continue;
    acc += k * a.value[g];
    ++c;
    if (acc >= deficit) return c;
  }
  return c;
}

std::int64_t min_c_owners(const std::vector<IntAgent>& agents, std::span<const std::size_t> owner, std::size_t k,
                          FairnessTag tag, std::vector<i64>& sums) {
  std::int64_t worst = 0;
  for (const auto& a : agents) {
    std::fill(sums.begin(), sums.end(), 0);
    for (std::size_t g = 0; g < owner.size(); ++g) sums[owner[g]] += a.value[g];
    switch (tag) {
    case FairnessTag::PROP:
      worst = std::max(worst, prop_need(a, owner, sums, a.group, static_cast<i64>(k)));
      break;
    case FairnessTag::EF:
      for (std::size_t other = 0; other < k; ++other)
        if (other != a.group) worst = std::max(worst, envy_need(a, owner, sums, a.group, other));
      break;
    case FairnessTag::CD:
      for (std::size_t own = 0; own < k; ++own)
        for (std::size_t other = 0; other < k; ++other)
          if (other != own) worst = std::max(worst, envy_need(a, owner, sums, own, other));
      break;
    }
  }
  return worst;
}

Rational sum_over(std::span<const Rational> u, std::span<const std::size_t> goods) {
  Rational s;
  for (std::size_t g : goods) s += u[g];
  return s;
}

/// Sum of the c largest utilities among `goods`.
Rational top_sum(std::span<const Rational> u, std::vector<std::size_t> goods, std::int64_t c) {
  std::sort(goods.begin(), goods.end(), [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  Rational s;
  for (std::size_t i = 0; i < goods.size() && static_cast<std::int64_t>(i) < c; ++i) s += u[goods[i]];
  return s;
}

bool envy_ok(std::span<const Rational> u, const Allocation& alloc, std::size_t own, std::size_t other,
             std::int64_t c) {
  const auto& theirs = alloc.bundles[other];
  return sum_over(u, alloc.bundles[own]) >= sum_over(u, theirs) - top_sum(u, theirs, c);
}

std::uint64_t checked_power(std::size_t k, std::size_t m, std::uint64_t cap) {
  std::uint64_t space = 1;
  for (std::size_t j = 0; j < m; ++j) {
    if (k != 0 && space > cap / k)
      throw CapExceeded(std::to_string(k) + "^" + std::to_string(m) + " allocations exceed cap " +
                        std::to_string(cap));
    space *= k;
  }
  return space;
}

void check_unit(const Rational& r) {
  if (r.sign() < 0 || r > Rational(1)) throw InvalidArgument("utility outside [0,1]: " + r.str());
}

} // namespace

// ---------------------------------------------------------------------------

void FairDivInstance::validate() const {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (group_sizes.size() != k || utilities.size() != k) throw DimensionError("group count does not match k");
  for (std::size_t i = 0; i < k; ++i) {
    if (group_sizes[i] == 0) throw InvalidArgument("group sizes must be positive");
    if (utilities[i].size() != group_sizes[i]) throw DimensionError("agent count does not match group size");
    for (const auto& u : utilities[i]) {
      if (u.size() != m) throw DimensionError("utility vector length does not match m");
      for (const auto& r : u) check_unit(r);
    }
  }
}

std::size_t FairDivInstance::agent_count() const noexcept {
  return std::accumulate(group_sizes.begin(), group_sizes.end(), std::size_t{0});
}

Allocation Allocation::from_owners(std::span<const std::size_t> owner, std::size_t k) {
  Allocation a;
  a.bundles.resize(k);
  for (std::size_t g = 0; g < owner.size(); ++g) {
    if (owner[g] >= k) throw InvalidArgument("owner index out of range");
    a.bundles[owner[g]].push_back(g);
  }
  return a;
}

void Allocation::validate(std::size_t k, std::size_t m) const {
  if (bundles.size() != k) throw InvalidArgument("allocation must have exactly k bundles");
  std::vector<int> seen(m, 0);
  for (const auto& b : bundles)
    for (std::size_t g : b) {
      if (g >= m) throw InvalidArgument("good index out of range: " + std::to_string(g));
      if (seen[g]++) throw InvalidArgument("good assigned twice: " + std::to_string(g));
    }
  for (std::size_t g = 0; g < m; ++g)
    if (!seen[g]) throw InvalidArgument("good not assigned: " + std::to_string(g));
}

std::vector<std::size_t> Allocation::owners(std::size_t m) const {
  std::vector<std::size_t> owner(m, 0);
  for (std::size_t b = 0; b < bundles.size(); ++b)
    for (std::size_t g : bundles[b]) owner[g] = b;
  return owner;
}

std::string_view to_string(FairnessTag tag) noexcept {
  switch (tag) {
  case FairnessTag::EF:
    return "EF";
  case FairnessTag::PROP:
    return "PROP";
  case FairnessTag::CD:
    return "CD";
  }
  return "PROP";
}

FairnessTag parse_fairness_tag(std::string_view text) {
  std::string lower(text);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "ef") return FairnessTag::EF;
  if (lower == "prop") return FairnessTag::PROP;
  if (lower == "cd") return FairnessTag::CD;
  throw InvalidArgument("unknown fairness notion: " + std::string(text));
}

bool check_fairness(const FairDivInstance& instance, const Allocation& allocation, const FairnessNotion& notion) {
  instance.validate();
  allocation.validate(instance.k, instance.m);
  if (notion.c < 0) throw InvalidArgument("c must be nonnegative");
  const std::size_t k = instance.k;
  Rational share(1, static_cast<std::int64_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& u : instance.utilities[i]) {
      switch (notion.tag) {
      case FairnessTag::PROP: {
        std::vector<std::size_t> outside;
        std::vector<std::size_t> owner = allocation.owners(instance.m);
        for (std::size_t g = 0; g < instance.m; ++g)
          if (owner[g] != i) outside.push_back(g);
        Rational all = sum_over(u, outside) + sum_over(u, allocation.bundles[i]);
        if (sum_over(u, allocation.bundles[i]) < all * share - top_sum(u, outside, notion.c)) return false;
        break;
      }
      case FairnessTag::EF:
        for (std::size_t other = 0; other < k; ++other)
          if (other != i && !envy_ok(u, allocation, i, other, notion.c)) return false;
        break;
      case FairnessTag::CD:
        for (std::size_t own = 0; own < k; ++own)
          for (std::size_t other = 0; other < k; ++other)
            if (other != own && !envy_ok(u, allocation, own, other, notion.c)) return false;
        break;
      }
    }
  }
  return true;
}

std::int64_t min_c_for_allocation(const FairDivInstance& instance, const Allocation& allocation, FairnessTag tag) {
  instance.validate();
  allocation.validate(instance.k, instance.m);
  auto agents = integer_agents(instance);
  auto owner = allocation.owners(instance.m);
  std::vector<i64> sums(instance.k);
  return min_c_owners(agents, owner, instance.k, tag, sums);
}

BruteForceResult brute_force_min_c(const FairDivInstance& instance, FairnessTag tag, std::uint64_t cap,
                                   unsigned threads) {
  instance.validate();
  const std::size_t k = instance.k;
  const std::size_t m = instance.m;
  (void)checked_power(k, m, cap);
  auto agents = integer_agents(instance);

  std::size_t prefix_depth = 0;
  std::size_t tasks = 1;
  while (prefix_depth < m && tasks < kMinTasks) {
    ++prefix_depth;
    tasks *= k;
  }

  struct Slot {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::size_t> owner;
    std::uint64_t visited = 0;
  };
  std::vector<Slot> slots(tasks);
  run_tasks(tasks, threads, [&](std::size_t t) {
    Slot& slot = slots[t];
    std::vector<std::size_t> owner(m, 0);
    std::size_t rest = t;
    for (std::size_t d = prefix_depth; d-- > 0;) {
      owner[d] = rest % k;
      rest /= k;
    }
    std::vector<i64> sums(k);
    for (;;) {
      ++slot.visited;
      std::int64_t c = min_c_owners(agents, owner, k, tag, sums);
      if (c < slot.best) {
        slot.best = c;
        slot.owner = owner;
        if (c == 0) return;
      }
      // odometer over the free suffix, last good least significant
      bool advanced = false;
      for (std::size_t g = m; g > prefix_depth && !advanced;) {
        --g;
        if (++owner[g] < k)
          advanced = true;
        else
          owner[g] = 0;
      }
      if (!advanced) return;
    }
  });

  BruteForceResult r;
  r.c_star = std::numeric_limits<std::int64_t>::max();
  std::size_t winner = 0;
  for (std::size_t t = 0; t < tasks; ++t) {
    r.allocations += slots[t].visited;
    if (slots[t].best < r.c_star) {
      r.c_star = slots[t].best;
      winner = t;
    }
  }
  r.witness = Allocation::from_owners(slots[winner].owner, k);
  return r;
}

void for_each_allocation(std::size_t k, std::size_t m, std::uint64_t cap,
                         const std::function<void(std::span<const std::size_t>)>& visit) {
  if (k == 0) throw InvalidArgument("k must be positive");
  std::uint64_t space = checked_power(k, m, cap);
  std::vector<std::size_t> owner(m, 0);
  for (std::uint64_t n = 0; n < space; ++n) {
    visit(owner);
    for (std::size_t g = m; g-- > 0;) {
      if (++owner[g] < k) break;
      owner[g] = 0;
    }
  }
}

FairDivInstance gen_prop_lb_instance(const RatMatrix& amat, std::size_t k, std::size_t i_star,
                                     std::span<const std::size_t> group_sizes) {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (group_sizes.size() != k) throw DimensionError("need one group size per group");
  if (i_star < 1 || i_star > k) throw InvalidArgument("i_star must lie in 1..k");
  for (std::size_t i = 0; i < k; ++i) {
    if (group_sizes[i] == 0) throw InvalidArgument("group sizes must be positive");
    if (i > 0 && group_sizes[i] > group_sizes[i - 1]) throw InvalidArgument("group sizes must be non-increasing");
  }
  const std::size_t rows = amat.rows();
  if (rows > group_sizes[i_star - 1] / 2)
    throw InvalidArgument("matrix has " + std::to_string(rows) + " rows but group " + std::to_string(i_star) +
                          " fits only " + std::to_string(group_sizes[i_star - 1] / 2) + " agent pairs");

  FairDivInstance inst;
  inst.k = k;
  inst.m = amat.cols();
  inst.group_sizes.assign(group_sizes.begin(), group_sizes.end());
  inst.utilities.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    inst.utilities[i].assign(group_sizes[i], std::vector<Rational>(inst.m));
    if (i < i_star) {
      for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t g = 0; g < inst.m; ++g) {
          inst.utilities[i][j][g] = amat.at(j, g);
          inst.utilities[i][j + rows][g] = Rational(1) - amat.at(j, g);
        }
    } else {
      std::fill(inst.utilities[i][0].begin(), inst.utilities[i][0].end(), Rational(1));
    }
  }
  return inst;
}

FairDivInstance gen_ef_lb_instance(const RatMatrix& amat, std::size_t k, std::span<const std::size_t> group_sizes) {
  return gen_prop_lb_instance(amat, k, 1, group_sizes);
}

FairDivInstance gen_cd_instance(const RatMatrix& amat, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be positive");
  std::vector<std::vector<Rational>> agents;
  for (std::size_t j = 0; j < amat.rows(); ++j) agents.emplace_back(amat.row(j).begin(), amat.row(j).end());
  for (std::size_t j = 0; j < amat.rows(); ++j) {
    std::vector<Rational> comp;
    for (const auto& r : amat.row(j)) comp.push_back(Rational(1) - r);
    agents.push_back(std::move(comp));
  }
  FairDivInstance inst;
  inst.k = k;
  inst.m = amat.cols();
  inst.utilities.resize(k);
  for (std::size_t a = 0; a < agents.size(); ++a) inst.utilities[a % k].push_back(std::move(agents[a]));
  for (auto& group : inst.utilities)
    if (group.empty()) group.emplace_back(inst.m);
  for (const auto& group : inst.utilities) inst.group_sizes.push_back(group.size());
  return inst;
}

LemmaOutcome check_lemma_prop_to_disc(const FairDivInstance& instance, const Allocation& allocation, std::int64_t c,
                                      std::size_t group, std::size_t agent, std::size_t complement) {
  instance.validate();
  if (group >= instance.k) throw InvalidArgument("group index out of range");
  if (agent >= instance.group_sizes[group] || complement >= instance.group_sizes[group])
    throw InvalidArgument("agent index out of range");
  const auto& u = instance.agent(group, agent);
  const auto& v = instance.agent(group, complement);
  for (std::size_t g = 0; g < instance.m; ++g)
    if (u[g] + v[g] != Rational(1)) throw InvalidArgument("agents are not complements");
  if (!check_fairness(instance, allocation, {FairnessTag::PROP, c}))
    throw InvalidArgument("allocation is not PROP" + std::to_string(c));

  auto k = static_cast<std::int64_t>(instance.k);
  const auto& bundle = allocation.bundles[group];
  Rational total;
  for (const auto& r : u) total += r;
  LemmaOutcome out;
  out.lhs = abs(sum_over(u, bundle) - total / Rational(k));
  out.rhs = Rational(c) +
            positive_part(Rational(static_cast<std::int64_t>(bundle.size())) -
                          Rational(static_cast<std::int64_t>(instance.m), k));
  out.holds = out.lhs <= out.rhs;
  return out;
}

AgentScaling build_agent_scaling(std::span<const Rational> utilities, std::size_t k, std::int64_t h) {
  if (h < 1) throw InvalidArgument("H must be positive");
  const std::size_t m = utilities.size();
  auto order = descending_order(utilities);
  std::size_t large_size = std::min<std::size_t>(checked_mul(static_cast<std::int64_t>(k), h), m);
  std::size_t top_size = std::min<std::size_t>(checked_mul(2, h), m);
  AgentScaling s;
  s.large.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(large_size));
  s.large_top.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::min(top_size, large_size)));
  std::sort(s.large.begin(), s.large.end());
  std::sort(s.large_top.begin(), s.large_top.end());
  s.p_scale = Rational(0);
  if (large_size > 0) s.p_scale = utilities[order[large_size - 1]];
  s.z.assign(m, Rational(0));
  std::vector<bool> is_large(m, false);
  for (std::size_t g : s.large) is_large[g] = true;
  for (std::size_t g = 0; g < m; ++g)
    if (!is_large[g] && !s.p_scale.is_zero()) s.z[g] = utilities[g] / s.p_scale;
  return s;
}

PropAllocation allocate_prop_via_odisc(const FairDivInstance& instance, const RecursionConfig& config) {
  instance.validate();
  const std::size_t k = instance.k;
  const std::size_t m = instance.m;
  PropAllocation out;
  for (std::int64_t h = 1;; h *= 2) {
    out.attempts.push_back(h);
    std::size_t padded = std::max<std::size_t>(m, checked_mul(static_cast<std::int64_t>(k), h));
    std::vector<RatMatrix> blocks;
    blocks.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      RatMatrix a(instance.group_sizes[i], padded);
      for (std::size_t j = 0; j < instance.group_sizes[i]; ++j) {
        std::vector<Rational> u = instance.agent(i, j);
        u.resize(padded);
        AgentScaling s = build_agent_scaling(u, k, h);
        for (std::size_t g = 0; g < padded; ++g) a.set(j, g, s.z[g]);
      }
      blocks.push_back(std::move(a));
    }
    RecursiveColoring colored = odisc_color(blocks, config);
    Rational achieved = eval_asymmetric(blocks, colored.coloring);
    if (achieved > Rational(h)) continue;

    std::vector<std::size_t> owner(m);
    for (std::size_t g = 0; g < m; ++g) owner[g] = static_cast<std::size_t>(colored.coloring[g] - 1);
    out.allocation = Allocation::from_owners(owner, k);
    out.h = h;
    out.c = 2 * h;
    out.dummy_goods = padded - m;
    out.coloring = std::move(colored.coloring);
    out.achieved = achieved;
    if (!check_fairness(instance, out.allocation, {FairnessTag::PROP, out.c}))
      throw VerificationError("allocation failed its PROP" + std::to_string(out.c) + " check");
    return out;
  }
}

} // namespace disclab
