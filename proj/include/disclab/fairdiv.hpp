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

// Group fair division of indivisible goods with additive utilities in [0,1].
//
// k groups receive one bundle each. With c an integer count of goods:
//   EFc    every agent of group i, against every other bundle A_i', is
//          satisfied once the c goods it values most are removed from A_i'.
//   PROPc  every agent of group i reaches u(G)/k after adding the c goods
//          it values most outside A_i.
//   CDc    the EFc condition for every agent of every group against every
//          ordered pair of bundles.
// Group and agent indices are 0-based throughout.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "disclab/asym_recursive.hpp"
#include "disclab/matrix.hpp"
#include "disclab/rational.hpp"

namespace disclab {

struct FairDivInstance {
  std::size_t k = 0;
  std::vector<std::size_t> group_sizes;
  std::size_t m = 0;
  /// utilities[group][agent][good]
  std::vector<std::vector<std::vector<Rational>>> utilities;

  /// Throws on shape mismatch or a utility outside [0,1].
  void validate() const;
  [[nodiscard]] std::size_t agent_count() const noexcept;
  [[nodiscard]] const std::vector<Rational>& agent(std::size_t group, std::size_t index) const {
    return utilities[group][index];
  }
};

struct Allocation {
  std::vector<std::vector<std::size_t>> bundles;

  /// owner[g] in 0..k-1 is the bundle receiving good g.
  static Allocation from_owners(std::span<const std::size_t> owner, std::size_t k);
  /// Throws InvalidArgument unless the bundles partition [m] into k parts.
  void validate(std::size_t k, std::size_t m) const;
  [[nodiscard]] std::vector<std::size_t> owners(std::size_t m) const;
};

enum class FairnessTag { EF, PROP, CD };

[[nodiscard]] std::string_view to_string(FairnessTag tag) noexcept;
/// Case-insensitive "ef", "prop", "cd".
[[nodiscard]] FairnessTag parse_fairness_tag(std::string_view text);

struct FairnessNotion {
  FairnessTag tag = FairnessTag::PROP;
  std::int64_t c = 0;
};

/// Exact check of the notion by top-c removal.
[[nodiscard]] bool check_fairness(const FairDivInstance& instance, const Allocation& allocation,
                                  const FairnessNotion& notion);

/// Smallest c in [0, m] for which check_fairness passes.
[[nodiscard]] std::int64_t min_c_for_allocation(const FairDivInstance& instance, const Allocation& allocation,
                                                FairnessTag tag);

struct BruteForceResult {
  std::int64_t c_star = 0;
  Allocation witness;
  /// Allocations evaluated. Below k^m only when a c = 0 witness stopped the search.
  std::uint64_t allocations = 0;
};

/// Minimum of min_c_for_allocation over all k^m allocations; the witness is
/// the lexicographically least owner vector among minimizers.
[[nodiscard]] BruteForceResult brute_force_min_c(const FairDivInstance& instance, FairnessTag tag,
                                                 std::uint64_t cap = 20'000'000, unsigned threads = 0);

/// Visits every owner vector in lexicographic order.
void for_each_allocation(std::size_t k, std::size_t m, std::uint64_t cap,
                         const std::function<void(std::span<const std::size_t>)>& visit);

/// Groups 0..i_star-1 encode each row of `amat` by an agent pair
/// (row, complement) at positions j and j + n'; groups i_star..k-1 get an
/// all-one first agent; every other agent is all-zero. i_star is 1-based,
/// group_sizes must be non-increasing and n' <= floor(n_{i_star}/2).
[[nodiscard]] FairDivInstance gen_prop_lb_instance(const RatMatrix& amat, std::size_t k, std::size_t i_star,
                                                   std::span<const std::size_t> group_sizes);

/// gen_prop_lb_instance with i_star = 1.
[[nodiscard]] FairDivInstance gen_ef_lb_instance(const RatMatrix& amat, std::size_t k,
                                                 std::span<const std::size_t> group_sizes);

/// One agent per row of `amat` followed by one complement agent per row,
/// dealt round-robin into k groups. Groups left empty get one all-zero agent.
[[nodiscard]] FairDivInstance gen_cd_instance(const RatMatrix& amat, std::size_t k);

struct LemmaOutcome {
  Rational lhs;  // |u(A_i) - u(G)/k|
  Rational rhs;  // c + [|A_i| - m/k]_+
  bool holds = false;
};

/// Throws InvalidArgument if the two agents of `group` are not complements
/// or the allocation is not PROPc.
[[nodiscard]] LemmaOutcome check_lemma_prop_to_disc(const FairDivInstance& instance, const Allocation& allocation,
                                                    std::int64_t c, std::size_t group, std::size_t agent,
                                                    std::size_t complement);

struct AgentScaling {
  std::vector<std::size_t> large;        // kH most valuable goods
  std::vector<std::size_t> large_top;    // 2H most valuable goods
  Rational p_scale;                      // min utility inside `large`
  std::vector<Rational> z;               // 0 on `large`, u/p_scale elsewhere
};

/// Ties between equal utilities go to the lower good index. `utilities`
/// must already include any dummy goods.
[[nodiscard]] AgentScaling build_agent_scaling(std::span<const Rational> utilities, std::size_t k, std::int64_t h);

struct PropAllocation {
  Allocation allocation;
  std::int64_t c = 0;
  std::int64_t h = 0;
  /// Zero-value goods appended so that m >= kH; indices m.. in the coloring.
  std::size_t dummy_goods = 0;
  Coloring coloring;  // over real and dummy goods
  Rational achieved;  // asymmetric discrepancy of the accepted coloring
  std::vector<std::int64_t> attempts;  // every H tried
};

/// Doubles H from 1 until the recursive coloring of the scaled z-matrices
/// has asymmetric discrepancy at most H, then returns the coloring's bundles
/// (dummy goods stripped) and verifies them PROP(2H) before returning.
[[nodiscard]] PropAllocation allocate_prop_via_odisc(const FairDivInstance& instance, const RecursionConfig& config);

} // namespace disclab
