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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Criteria 1-9 run once with one worker
// thread and once with eight; criterion 10 compares the two transcripts.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "disclab/asym_recursive.hpp"
#include "disclab/cli.hpp"
#include "disclab/disc_engine.hpp"
#include "disclab/fairdiv.hpp"
#include "disclab/json_io.hpp"
#include "disclab/lb_constructions.hpp"
#include "oracles.hpp"

using namespace disclab;
using json_io::Json;

namespace {

// Wall-clock limits in seconds, per criterion (0 = none).
constexpr double kLemmaSeconds = 10;
constexpr double kGridSeconds = 60;
constexpr double kRecursionSeconds = 300;

constexpr int kLemmaSamples = 1000;
constexpr int kMulticolorRandom = 100;
constexpr int kSolverTrials = 200;
constexpr int kRecursionTrials = 200;
constexpr int kAllocationTrials = 100;

struct Outcome {
  bool pass = true;
  std::string detail;
  Json transcript = Json::object();
};

using Criterion = std::function<Outcome(unsigned threads)>;

OracleConfig exact_config(unsigned threads) {
  OracleConfig cfg;
  cfg.threads = threads;
  return cfg;
}

RatMatrix w_of(int e) { return lift_w(hadamard_sylvester(e)); }

RatMatrix row_of_ones(std::size_t m) { return RatMatrix(1, m, std::vector<Rational>(m, Rational(1))); }

std::uint64_t power(std::size_t base, std::size_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(json_io::to_json(r));
  return out;
}

// 1. Hadamard lemma on unit and random integer vectors

Outcome lemma_suite(unsigned) {
  Outcome o;
  std::size_t checks = 0, failures = 0;
  for (int e = 1; e <= 6; ++e) {
    RatMatrix w = w_of(e);
    const std::size_t n = w.rows();
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(n));
    Rational lhs_total, rhs_total;
    std::size_t local_failures = 0;
    auto run = [&](const std::vector<Rational>& z) {
      LemmaCheck lc = check_hadamard_lemma(w, z);
      ++checks;
      lhs_total += lc.lhs;
      rhs_total += lc.rhs;
      if (!lc.holds) ++local_failures;
    };
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> z(n);
      z[i] = Rational(1);
      run(z);
    }
    for (int s = 0; s < kLemmaSamples; ++s) {
      std::vector<Rational> z(n);
      for (auto& v : z) v = Rational(static_cast<std::int64_t>(rng() % 17) - 8);
      run(z);
    }
    failures += local_failures;
    o.transcript[std::to_string(n)] = Json{{"failures", local_failures},
                                           {"lhs_total", json_io::to_json(lhs_total)},
                                           {"rhs_total", json_io::to_json(rhs_total)}};
  }
  o.pass = failures == 0;
  o.detail = std::to_string(checks) + " checks, " + std::to_string(failures) + " failures";
  return o;
}

// 2. stacked construction certification grid

Outcome certification_grid(unsigned threads) {
  Outcome o;
  o.transcript = Json::array();
  OracleConfig cfg = exact_config(threads);
  std::size_t passed = 0, total = 0, known_mismatch = 0;
  struct Known {
    std::size_t n;
    Rational p, value;
  };
  const std::vector<Known> known{{2, Rational(1, 3), Rational(1, 3)},
                                 {2, Rational(1, 5), Rational(2, 5)},
                                 {4, Rational(1, 2), Rational(1)}};
  for (std::size_t n : {2, 4, 8}) {
    for (Rational p : {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5), Rational(1, 7)}) {
      CertReport r = certify_wdisc_lb(p, n, cfg);
      ++total;
      // independent re-check of the square comparison and the witness
      __int128 num = r.exact_value.num(), den = r.exact_value.den();
      bool square_ok = 64 * num * num >= static_cast<__int128>(n - 1) * den * den;
      bool witness_ok = eval_weighted(r.construction.matrix, r.construction.p, r.witness) == r.exact_value;
      if (r.pass && square_ok && witness_ok) ++passed;
      for (const auto& k : known)
        if (k.n == n && k.p == p && k.value != r.exact_value) ++known_mismatch;
      o.transcript.push_back(json_io::to_json(r));
    }
  }
  o.pass = passed == total && known_mismatch == 0;
  o.detail = std::to_string(passed) + "/" + std::to_string(total) + " certified, " + std::to_string(known_mismatch) +
             " known-value mismatches";
  return o;
}

// 3. multicolor chain and odisc >= wdisc(1/k)

Outcome multicolor_chain(unsigned threads) {
  Outcome o;
  OracleConfig cfg = exact_config(threads);
  std::size_t chain_ok = 0, cases = 0;
  Json certified = Json::array();
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {4, 2}, {4, 3}}) {
    CertReport r = certify_multicolor_lb(k, n, cfg);
    ++cases;
    std::vector<RatMatrix> blocks(k, r.construction.matrix);
    bool chain = r.pass && r.odisc_value >= r.exact_value && meets_proof_bound(r.exact_value, n) &&
                 oracle::naive_asym_value(blocks, r.coloring) == r.odisc_value;
    if (chain) ++chain_ok;
    certified.push_back(json_io::to_json(r));
  }
  std::mt19937_64 rng(31);
  std::size_t violations = 0;
  Json random = Json::array();
  for (int trial = 0; trial < kMulticolorRandom; ++trial) {
    std::size_t k = oracle::pick(rng, 2, 3);
    RatMatrix a = oracle::random_binary(rng, oracle::pick(rng, 1, 3), oracle::pick(rng, 1, 8));
    std::vector<RatMatrix> blocks(k, a);
    OdiscResult od = odisc_exact(blocks, cfg);
    WdiscResult wd = wdisc_exact(a, Rational(1, static_cast<std::int64_t>(k)), cfg);
    if (od.value < wd.value) ++violations;
    random.push_back(Json{{"k", k}, {"odisc", json_io::to_json(od.value)}, {"wdisc", json_io::to_json(wd.value)}});
  }
  o.transcript = Json{{"certified", std::move(certified)}, {"random", std::move(random)}};
  o.pass = chain_ok == cases && violations == 0;
  o.detail = std::to_string(chain_ok) + "/" + std::to_string(cases) + " chains hold, " + std::to_string(violations) +
             " violations in " + std::to_string(kMulticolorRandom) + " random";
  return o;
}

// 4. branch and bound against 2^m enumeration

Outcome solver_equivalence(unsigned threads) {
  Outcome o;
  o.transcript = Json::array();
  OracleConfig cfg = exact_config(threads);
  std::mt19937_64 rng(404);
  std::size_t agree = 0;
  for (int trial = 0; trial < kSolverTrials; ++trial) {
    RatMatrix a = oracle::random_matrix(rng, oracle::pick(rng, 1, 5), oracle::pick(rng, 1, 12));
    Rational p = oracle::random_unit(rng, 7);
    WdiscResult got = wdisc_exact(a, p, cfg);
    oracle::WeightedAnswer want = oracle::naive_wdisc(a, p);
    if (got.value == want.value && got.witness == want.witness) ++agree;
    o.transcript.push_back(json_io::to_json(got));
  }
  o.pass = agree == kSolverTrials;
  o.detail = std::to_string(agree) + "/" + std::to_string(kSolverTrials) + " value and witness identical";
  return o;
}

// 5. recursion certificate soundness

Outcome recursion_soundness(unsigned threads) {
  Outcome o;
  o.transcript = Json::array();
  RecursionConfig cfg;
  cfg.oracle = exact_config(threads);
  std::mt19937_64 rng(505);
  std::size_t violations = 0, audits_failed = 0, colors = 0;
  for (int trial = 0; trial < kRecursionTrials; ++trial) {
    std::size_t k = oracle::pick(rng, 2, 5);
    std::size_t m = oracle::pick(rng, 1, 14);
    std::vector<RatMatrix> blocks;
    for (std::size_t s = 0; s < k; ++s) blocks.push_back(oracle::random_matrix(rng, oracle::pick(rng, 1, 3), m));
    RecursiveColoring rc = odisc_color(blocks, cfg);
    Json measured = Json::array();
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<Rational> v(m);
      for (std::size_t j = 0; j < m; ++j)
        v[j] = Rational(1, static_cast<std::int64_t>(k)) -
               Rational(rc.coloring[j] == static_cast<int>(s + 1) ? 1 : 0);
      Rational d = oracle::inf_norm_of_product(blocks[s], v);
      ++colors;
      if (d > rc.certificate.bounds[s]) ++violations;
      measured.push_back(json_io::to_json(d));
    }
    if (!audit_certificate(blocks, rc.coloring, rc.certificate).ok()) ++audits_failed;
    o.transcript.push_back(
        Json{{"coloring", rc.coloring}, {"bounds", rationals(rc.certificate.bounds)}, {"measured", measured}});
  }
  o.pass = violations == 0 && audits_failed == 0;
  o.detail = std::to_string(colors) + " colors, " + std::to_string(violations) + " bound violations, " +
             std::to_string(audits_failed) + " failed audits";
  return o;
}

// 6. PROP(2H) allocations end to end

/// PROPc by sorting the goods outside the bundle, written independently of
/// the library checker.
bool prop_holds(const FairDivInstance& inst, const Allocation& alloc, std::int64_t c) {
  std::vector<std::size_t> owner(inst.m, inst.k);
  for (std::size_t i = 0; i < alloc.bundles.size(); ++i)
    for (std::size_t g : alloc.bundles[i]) owner[g] = i;
  if (std::count(owner.begin(), owner.end(), inst.k) != 0) return false;
  const auto k = static_cast<std::int64_t>(inst.k);
  for (std::size_t i = 0; i < inst.k; ++i) {
    for (const auto& u : inst.utilities[i]) {
      Rational own, total;
      std::vector<Rational> outside;
      for (std::size_t g = 0; g < inst.m; ++g) {
        total += u[g];
        if (owner[g] == i)
          own += u[g];
        else
          outside.push_back(u[g]);
      }
      std::sort(outside.begin(), outside.end(), [](const Rational& a, const Rational& b) { return a > b; });
      for (std::size_t g = 0; g < outside.size() && static_cast<std::int64_t>(g) < c; ++g) own += outside[g];
      if (own * Rational(k) < total) return false;
    }
  }
  return true;
}

Outcome allocation_end_to_end(unsigned threads) {
  Outcome o;
  o.transcript = Json::array();
  RecursionConfig cfg;
  cfg.oracle = exact_config(threads);
  std::mt19937_64 rng(606);
  int accepted = 0;
  std::int64_t max_h = 0;
  for (int trial = 0; trial < kAllocationTrials; ++trial) {
    std::size_t k = oracle::pick(rng, 2, 3);
    std::size_t m = oracle::pick(rng, 1, 24);
    FairDivInstance inst = oracle::random_instance(rng, k, 3, m);
    PropAllocation r = allocate_prop_via_odisc(inst, cfg);
    if (prop_holds(inst, r.allocation, 2 * r.h)) ++accepted;
    max_h = std::max(max_h, r.h);
    o.transcript.push_back(Json{{"allocation", json_io::to_json(r.allocation)}, {"h", r.h}});
  }
  o.pass = accepted == kAllocationTrials;
  o.detail = std::to_string(accepted) + "/" + std::to_string(kAllocationTrials) + " accepted as PROP(2H), max H " +
             std::to_string(max_h);
  return o;
}

// 7-9. impossibility instances

struct Impossibility {
  std::string name;
  RatMatrix amat;
  std::size_t k;
  std::size_t istar;
  std::vector<std::size_t> sizes;
};

/// [1 1 1] first, then W2 stacked one to five times (m <= 10).
std::vector<Impossibility> impossibility_cases() {
  std::vector<Impossibility> cases{{"ones3", row_of_ones(3), 2, 1, {2, 1}}};
  for (std::size_t t = 1; t <= 5; ++t)
    cases.push_back({"w2x" + std::to_string(t), stack_horizontal(w_of(1), t), 2, 1, {4, 2}});
  cases.push_back({"w2x2-k3", stack_horizontal(w_of(1), 2), 3, 1, {4, 2, 1}});
  cases.push_back({"w2x2-k3-i2", stack_horizontal(w_of(1), 2), 3, 2, {4, 4, 1}});
  return cases;
}

Outcome prop_impossibility(unsigned threads) {
  Outcome o;
  OracleConfig cfg = exact_config(threads);
  std::string ones_summary, failed;
  for (const auto& c : impossibility_cases()) {
    FairDivInstance inst = gen_prop_lb_instance(c.amat, c.k, c.istar, c.sizes);
    BruteForceResult bf = brute_force_min_c(inst, FairnessTag::PROP, 20'000'000, threads);
    std::int64_t naive = oracle::naive_brute_min_c(inst, FairnessTag::PROP);
    Rational delta = wdisc_exact(c.amat, Rational(1, static_cast<std::int64_t>(c.k)), cfg).value;
    Rational bound = Rational(static_cast<std::int64_t>(c.istar), static_cast<std::int64_t>(c.k)) * delta - Rational(1);
    // exhaustive unless a c = 0 witness ended the search early
    bool exhaustive = bf.c_star == 0 || bf.allocations == power(c.k, c.amat.cols());
    bool case_ok = bf.c_star == naive && Rational(bf.c_star) > bound && exhaustive &&
                   oracle::naive_min_c(inst, bf.witness, FairnessTag::PROP) == bf.c_star;
    if (c.name == "ones3") {
      std::size_t prop0 = 0;
      oracle::each_owner(2, 3, [&](const std::vector<std::size_t>& owner) {
        if (oracle::naive_fair(inst, oracle::allocation_from_owner(owner, 2), FairnessTag::PROP, 0)) ++prop0;
      });
      case_ok = case_ok && bf.c_star == 1 && bf.allocations == 8 && prop0 == 0;
      ones_summary = "[1 1 1] c*=" + std::to_string(bf.c_star) + ", PROP0 allocations " + std::to_string(prop0) + "/8";
    }
    if (!case_ok) failed += " " + c.name;
    o.transcript[c.name] = Json{{"c_star", bf.c_star},
                                {"delta", json_io::to_json(delta)},
                                {"witness", json_io::to_json(bf.witness)},
                                {"allocations", bf.allocations}};
  }
  o.pass = failed.empty();
  o.detail = ones_summary + ", " + std::to_string(impossibility_cases().size() - 1) + " stacked variants";
  if (!failed.empty()) o.detail += ", failed:" + failed;
  return o;
}

Outcome ef_impossibility(unsigned threads) {
  Outcome o;
  OracleConfig cfg = exact_config(threads);
  std::string ones_summary, failed;
  for (const auto& c : impossibility_cases()) {
    if (c.istar != 1) continue;
    FairDivInstance inst = gen_ef_lb_instance(c.amat, c.k, c.sizes);
    BruteForceResult bf = brute_force_min_c(inst, FairnessTag::EF, 20'000'000, threads);
    std::int64_t naive = oracle::naive_brute_min_c(inst, FairnessTag::EF);
    Rational delta = wdisc_exact(c.amat, Rational(1, static_cast<std::int64_t>(c.k)), cfg).value;
    bool case_ok = bf.c_star == naive && Rational(bf.c_star) > delta / Rational(2) - Rational(1) &&
                   oracle::naive_min_c(inst, bf.witness, FairnessTag::EF) == bf.c_star;
    if (c.name == "ones3") {
      std::size_t ef0 = 0;
      oracle::each_owner(2, 3, [&](const std::vector<std::size_t>& owner) {
        if (oracle::naive_fair(inst, oracle::allocation_from_owner(owner, 2), FairnessTag::EF, 0)) ++ef0;
      });
      case_ok = case_ok && bf.c_star == 1 && ef0 == 0;
      ones_summary = "[1 1 1] c*=" + std::to_string(bf.c_star) + ", EF0 allocations " + std::to_string(ef0) + "/8";
    }
    if (!case_ok) failed += " " + c.name;
    o.transcript[c.name] = Json{{"c_star", bf.c_star}, {"witness", json_io::to_json(bf.witness)}};
  }
  o.pass = failed.empty();
  o.detail = ones_summary;
  if (!failed.empty()) o.detail += ", failed:" + failed;
  return o;
}

/// The lemma inequality recomputed from its definition.
bool lemma_direct(const FairDivInstance& inst, const Allocation& alloc, std::int64_t c, std::size_t group,
                  std::size_t agent) {
  const auto& u = inst.utilities[group][agent];
  const auto& bundle = alloc.bundles[group];
  Rational own, total;
  for (std::size_t g : bundle) own += u[g];
  for (const auto& v : u) total += v;
  const auto k = static_cast<std::int64_t>(inst.k);
  Rational lhs = abs(own - total / Rational(k));
  Rational excess = Rational(static_cast<std::int64_t>(bundle.size())) - Rational(static_cast<std::int64_t>(inst.m), k);
  return lhs <= Rational(c) + std::max(excess, Rational(0));
}

Outcome lemma_sweep(unsigned) {
  Outcome o;
  std::size_t checks = 0, violations = 0;
  for (const auto& c : impossibility_cases()) {
    FairDivInstance inst = gen_prop_lb_instance(c.amat, c.k, c.istar, c.sizes);
    const std::size_t rows = c.amat.rows();
    std::size_t case_checks = 0;
    for_each_allocation(c.k, c.amat.cols(), 20'000'000, [&](std::span<const std::size_t> owner) {
      Allocation alloc = Allocation::from_owners(owner, c.k);
      std::int64_t c_min = min_c_for_allocation(inst, alloc, FairnessTag::PROP);
      // an allocation that is PROPc is also PROP(c+1)
      for (std::int64_t cc = c_min; cc <= c_min + 1; ++cc)
        for (std::size_t g = 0; g < c.istar; ++g)
          for (std::size_t j = 0; j < rows; ++j) {
            ++case_checks;
            bool lib = check_lemma_prop_to_disc(inst, alloc, cc, g, j, j + rows).holds;
            bool direct = lemma_direct(inst, alloc, cc, g, j) && lemma_direct(inst, alloc, cc, g, j + rows);
            if (!lib || !direct) ++violations;
          }
    });
    checks += case_checks;
    o.transcript[c.name] = case_checks;
  }
  o.transcript["violations"] = violations;
  o.pass = violations == 0 && checks > 0;
  o.detail = std::to_string(checks) + " checks, " + std::to_string(violations) + " violations";
  return o;
}

/// Command-line runs whose stdout must not depend on --threads.
std::string cli_transcript(unsigned threads) {
  const std::vector<std::vector<std::string>> commands{
      {"experiment", "--ns", "2,4,8", "--ps", "1/2,1/3,1/4,1/5,1/7", "--ks", "2,3", "--solver", "exact,heur"},
      {"certify", "wdisc-lb", "--p", "1/7", "--n", "8"},
      {"certify", "multicolor-lb", "--k", "3", "--n", "4"},
      {"certify", "hadamard-lemma", "--n", "64", "--samples", "1000", "--seed", "7"},
  };
  std::string all;
  for (auto args : commands) {
    args.insert(args.end(), {"--threads", std::to_string(threads)});
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    all += std::to_string(code) + "\n" + out.str();
  }
  return all;
}

struct Entry {
  int id;
  std::string title;
  Criterion run;
  double limit_seconds;
};

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"disclab acceptance suite"};
  std::string transcript_dir;
  app.add_option("--transcripts", transcript_dir, "Write both transcripts as JSON into this directory");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Entry> entries{
      {1, "hadamard lemma", lemma_suite, kLemmaSeconds},
      {2, "stacked lower bound grid", certification_grid, kGridSeconds},
      {3, "multicolor chain", multicolor_chain, 0},
      {4, "solver equivalence", solver_equivalence, 0},
      {5, "recursion soundness", recursion_soundness, kRecursionSeconds},
      {6, "PROP(2H) allocations", allocation_end_to_end, 0},
      {7, "PROP impossibility", prop_impossibility, 0},
      {8, "EF impossibility", ef_impossibility, 0},
      {9, "lemma sweep", lemma_sweep, 0},
  };

  Json first = Json::object(), second = Json::object();
  bool all = true;
  for (const auto& e : entries) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.run(1);
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("threw: ") + ex.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = e.limit_seconds == 0 || seconds < e.limit_seconds;
    char timing[64];
    std::snprintf(timing, sizeof timing, " (%.2f s", seconds);
    std::string detail = out.detail + timing + (e.limit_seconds > 0 ? ", limit " + std::to_string(static_cast<int>(e.limit_seconds)) + " s)" : ")");
    report(e.id, e.title, out.pass && in_time, detail);
    all = all && out.pass && in_time;
    first[std::to_string(e.id)] = std::move(out.transcript);
  }

  std::size_t differing = 0;
  for (const auto& e : entries) {
    Outcome out;
    try {
      out = e.run(8);
    } catch (const std::exception& ex) {
      out.transcript = std::string("threw: ") + ex.what();
    }
    if (out.transcript.dump() != first[std::to_string(e.id)].dump()) ++differing;
    second[std::to_string(e.id)] = std::move(out.transcript);
  }
  first["cli"] = cli_transcript(1);
  second["cli"] = cli_transcript(8);
  if (first["cli"] != second["cli"]) ++differing;
  std::string a = first.dump(2), b = second.dump(2);
  bool same = a == b && differing == 0;
  report(10, "determinism across thread counts", same,
         std::to_string(a.size()) + " bytes per transcript, " + std::to_string(differing) + " parts differ");
  all = all && same;

  if (!transcript_dir.empty()) {
    std::ofstream(transcript_dir + "/threads1.json") << a << "\n";
    std::ofstream(transcript_dir + "/threads8.json") << b << "\n";
  }
  return all ? 0 : 1;
}
