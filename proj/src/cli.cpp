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

#include "disclab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "disclab/asym_recursive.hpp"
#include "disclab/disc_engine.hpp"
#include "disclab/error.hpp"
#include "disclab/fairdiv.hpp"
#include "disclab/json_io.hpp"
#include "disclab/lb_constructions.hpp"
#include "disclab/matrix.hpp"

namespace disclab::cli {

namespace {

using json_io::Json;

constexpr std::uint64_t kDefaultCap = 20'000'000;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  // shared
  unsigned threads = 0;
  std::optional<std::uint64_t> cap;
  std::uint64_t seed = 0;
  std::int64_t iters = 1000;
  std::string out_path;

  std::string p;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t istar = 1;
  std::vector<std::string> matrices;
  std::string instance;
  std::string allocation;
  std::string notion = "prop";
  std::int64_t c = 0;
  std::string oracle = "exact";
  std::vector<std::size_t> sizes;
  std::size_t samples = 1000;
  bool greedy = false;

  // experiment
  std::vector<std::size_t> ns;
  std::vector<std::string> ps;
  std::vector<std::size_t> ks;
  std::vector<std::string> solvers;
  std::string csv_path;
  bool float_view = false;
  bool timing = false;
};

std::uint64_t resolve_cap(const Options& o) {
  if (o.cap) return *o.cap;
  if (const char* env = std::getenv("DISCLAB_CAP")) {
    std::string text(env);
    char* end = nullptr;
    unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0' || v == 0) throw UsageError("DISCLAB_CAP must be a positive integer");
    return v;
  }
  return kDefaultCap;
}

OracleConfig oracle_config(const Options& o) {
  OracleConfig cfg;
  cfg.seed = o.seed;
  cfg.iterations = o.iters;
  cfg.threads = o.threads;
  cfg.enumeration_cap = resolve_cap(o);
  // 2^width <= cap; the default cap gives a width of 24
  std::size_t width = 0;
  while (width < 62 && (std::uint64_t{1} << (width + 1)) <= cfg.enumeration_cap) ++width;
  cfg.exact_width_cap = width;
  return cfg;
}

Rational require_p(const Options& o) {
  if (o.p.empty()) throw UsageError("--p is required");
  return Rational::parse(o.p);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
  if (!f) throw UsageError("write to '" + path + "' failed");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// With --out the payload goes to the file and `summary` to stdout.
void deliver(const Options& o, const Json& payload, Json summary, std::ostream& out) {
  if (o.out_path.empty()) {
    out << dump(payload);
    return;
  }
  write_file(o.out_path, dump(payload));
  summary["out"] = o.out_path;
  out << dump(summary);
}

std::vector<RatMatrix> read_blocks(const Options& o) {
  if (o.matrices.empty()) throw UsageError("--matrix is required");
  std::vector<RatMatrix> blocks;
  for (const auto& path : o.matrices) blocks.push_back(json_io::matrix_from_json(read_json_file(path)));
  if (blocks.size() == 1 && o.k > 1) blocks.assign(o.k, blocks.front());
  if (o.k != 0 && blocks.size() != o.k) throw UsageError("--k disagrees with the number of --matrix files");
  return blocks;
}

std::size_t log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) throw UsageError("--n must be a power of two");
  std::size_t e = 0;
  while ((std::size_t{1} << e) < n) ++e;
  return e;
}

// construct

int cmd_construct_stacked(const Options& o, std::ostream& out) {
  if (o.n == 0) throw UsageError("--n is required");
  StackedConstruction sc = build_stacked(require_p(o), o.n);
  deliver(o, json_io::to_json(sc.matrix), json_io::to_json(sc), out);
  return kOk;
}

int cmd_construct_hadamard(const Options& o, std::ostream& out) {
  SignMatrix h = hadamard_sylvester(static_cast<int>(log2_exact(o.n)));
  deliver(o, json_io::to_json(h), Json{{"n", o.n}}, out);
  return kOk;
}

int cmd_construct_w(const Options& o, std::ostream& out) {
  RatMatrix w = lift_w(hadamard_sylvester(static_cast<int>(log2_exact(o.n))));
  deliver(o, json_io::to_json(w), Json{{"n", o.n}}, out);
  return kOk;
}

// wdisc / odisc

RatMatrix single_matrix(const Options& o) {
  if (o.matrices.size() != 1) throw UsageError("exactly one --matrix is required");
  return json_io::matrix_from_json(read_json_file(o.matrices.front()));
}

int cmd_wdisc_exact(const Options& o, std::ostream& out) {
  WdiscResult r = wdisc_exact(single_matrix(o), require_p(o), oracle_config(o));
  out << dump(json_io::to_json(r));
  return kOk;
}

int cmd_wdisc_heur(const Options& o, std::ostream& out) {
  RatMatrix a = single_matrix(o);
  Rational p = require_p(o);
  WdiscResult r = o.greedy ? wdisc_greedy(a, p) : wdisc_heuristic(a, p, oracle_config(o));
  out << dump(json_io::to_json(r));
  return kOk;
}

int cmd_odisc_exact(const Options& o, std::ostream& out) {
  std::vector<RatMatrix> blocks = read_blocks(o);
  OdiscResult r = odisc_exact(blocks, oracle_config(o));
  out << dump(json_io::to_json(r));
  return kOk;
}

int cmd_odisc_color(const Options& o, std::ostream& out) {
  std::vector<RatMatrix> blocks = read_blocks(o);
  RecursionConfig cfg;
  cfg.oracle = oracle_config(o);
  cfg.oracle.kind = parse_oracle_kind(o.oracle);
  RecursiveColoring rc = odisc_color(blocks, cfg);
  CertificateAudit audit = audit_certificate(blocks, rc.coloring, rc.certificate);
  Json per_color = Json::array();
  for (const auto& v : per_color_discrepancy(blocks, rc.coloring)) per_color.push_back(json_io::to_json(v));
  Json bounds = Json::array();
  for (const auto& b : rc.certificate.bounds) bounds.push_back(json_io::to_json(b));
  Json j{{"value", json_io::to_json(eval_asymmetric(blocks, rc.coloring))},
         {"coloring", rc.coloring},
         {"per_color", std::move(per_color)},
         {"bounds", std::move(bounds)},
         {"reference_bound", json_io::to_json(reference_bound(blocks.size(), blocks.front().rows(), cfg))},
         {"certificate", json_io::to_json(rc.certificate)},
         {"audit", Json{{"nodes", audit.nodes},
                        {"partition_violations", audit.partition_violations},
                        {"domination_violations", audit.domination_violations},
                        {"bound_violations", audit.bound_violations},
                        {"telescoping_violations", audit.telescoping_violations},
                        {"ok", audit.ok()}}}};
  out << dump(j);
  return audit.ok() ? kOk : kCertificationFailure;
}

// certify

int cmd_certify_wdisc(const Options& o, std::ostream& out) {
  if (o.n == 0) throw UsageError("--n is required");
  CertReport r = certify_wdisc_lb(require_p(o), o.n, oracle_config(o));
  out << dump(json_io::to_json(r));
  return r.pass ? kOk : kCertificationFailure;
}

int cmd_certify_multicolor(const Options& o, std::ostream& out) {
  if (o.n == 0 || o.k == 0) throw UsageError("--n and --k are required");
  CertReport r = certify_multicolor_lb(o.k, o.n, oracle_config(o));
  out << dump(json_io::to_json(r));
  return r.pass ? kOk : kCertificationFailure;
}

int cmd_certify_hadamard_lemma(const Options& o, std::ostream& out) {
  RatMatrix w = lift_w(hadamard_sylvester(static_cast<int>(log2_exact(o.n))));
  std::mt19937_64 rng(o.seed);
  std::size_t checks = 0, failures = 0;
  Json first_failure = nullptr;
  auto run_one = [&](const std::vector<Rational>& z) {
    ++checks;
    LemmaCheck lc = check_hadamard_lemma(w, z);
    if (!lc.holds) {
      if (failures++ == 0) {
        Json zj = Json::array();
        for (const auto& v : z) zj.push_back(json_io::to_json(v));
        first_failure = Json{{"z", std::move(zj)}, {"lhs", json_io::to_json(lc.lhs)}, {"rhs", json_io::to_json(lc.rhs)}};
      }
    }
  };
  for (std::size_t i = 0; i < o.n; ++i) {
    std::vector<Rational> z(o.n);
    z[i] = Rational(1);
    run_one(z);
  }
  for (std::size_t s = 0; s < o.samples; ++s) {
    std::vector<Rational> z(o.n);
    for (auto& v : z) v = Rational(static_cast<std::int64_t>(rng() % 17) - 8);
    run_one(z);
  }
  Json j{{"n", o.n}, {"checks", checks}, {"failures", failures}, {"pass", failures == 0}};
  if (failures) j["first_failure"] = first_failure;
  out << dump(j);
  return failures == 0 ? kOk : kCertificationFailure;
}

// fair division

FairDivInstance read_instance(const Options& o) {
  if (o.instance.empty()) throw UsageError("--instance is required");
  return json_io::instance_from_json(read_json_file(o.instance));
}

Allocation read_allocation(const Options& o, const FairDivInstance& inst) {
  Allocation a = json_io::allocation_from_json(read_json_file(o.allocation));
  a.validate(inst.k, inst.m);
  return a;
}

int cmd_fd_gen(const Options& o, std::ostream& out) {
  RatMatrix a = single_matrix(o);
  if (o.k < 2) throw UsageError("--k must be at least 2");
  FairnessTag tag = parse_fairness_tag(o.notion);
  std::vector<std::size_t> sizes = o.sizes;
  if (sizes.empty() && tag != FairnessTag::CD) sizes.assign(o.k, 2 * a.rows());
  FairDivInstance inst;
  switch (tag) {
    case FairnessTag::PROP: inst = gen_prop_lb_instance(a, o.k, o.istar, sizes); break;
    case FairnessTag::EF: inst = gen_ef_lb_instance(a, o.k, sizes); break;
    case FairnessTag::CD: inst = gen_cd_instance(a, o.k); break;
  }
  deliver(o, json_io::to_json(inst),
          Json{{"notion", to_string(tag)}, {"k", inst.k}, {"m", inst.m}, {"agents", inst.agent_count()}}, out);
  return kOk;
}

int cmd_fd_check(const Options& o, std::ostream& out) {
  FairDivInstance inst = read_instance(o);
  if (o.allocation.empty()) throw UsageError("--allocation is required");
  Allocation a = read_allocation(o, inst);
  FairnessNotion notion{parse_fairness_tag(o.notion), o.c};
  if (notion.c < 0) throw UsageError("--c must be nonnegative");
  bool pass = check_fairness(inst, a, notion);
  out << dump(Json{{"notion", to_string(notion.tag)}, {"c", notion.c}, {"pass", pass}});
  return pass ? kOk : kCertificationFailure;
}

int cmd_fd_minc(const Options& o, std::ostream& out) {
  FairDivInstance inst = read_instance(o);
  FairnessTag tag = parse_fairness_tag(o.notion);
  if (!o.allocation.empty()) {
    Allocation a = read_allocation(o, inst);
    out << dump(Json{{"notion", to_string(tag)}, {"c_star", min_c_for_allocation(inst, a, tag)},
                     {"allocation", json_io::to_json(a)}});
    return kOk;
  }
  BruteForceResult r = brute_force_min_c(inst, tag, resolve_cap(o), o.threads);
  out << dump(Json{{"notion", to_string(tag)},
                   {"c_star", r.c_star},
                   {"witness", json_io::to_json(r.witness)},
                   {"allocations", r.allocations}});
  return kOk;
}

int cmd_fd_allocate(const Options& o, std::ostream& out) {
  FairDivInstance inst = read_instance(o);
  RecursionConfig cfg;
  cfg.oracle = oracle_config(o);
  cfg.oracle.kind = parse_oracle_kind(o.oracle);
  PropAllocation r = allocate_prop_via_odisc(inst, cfg);
  bool verified = check_fairness(inst, r.allocation, FairnessNotion{FairnessTag::PROP, 2 * r.h});
  out << dump(Json{{"allocation", json_io::to_json(r.allocation)},
                   {"h", r.h},
                   {"c", r.c},
                   {"dummy_goods", r.dummy_goods},
                   {"achieved", json_io::to_json(r.achieved)},
                   {"attempts", r.attempts},
                   {"verified", verified}});
  return verified ? kOk : kCertificationFailure;
}

// experiment

std::string float_text(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", r.to_double());
  return buf;
}

struct Row {
  std::string kind;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string p;
  std::string solver;
  std::string status = "ok";
  std::optional<Rational> value;
  Rational lb;
  std::optional<Rational> reference;
  std::string pass;
  double wall_ms = 0;
};

int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> solvers = o.solvers.empty() ? std::vector<std::string>{"exact"} : o.solvers;
  for (const auto& s : solvers)
    if (s != "exact" && s != "heur" && s != "greedy") throw UsageError("unknown solver '" + s + "'");
  if (o.ns.empty() || (o.ps.empty() && o.ks.empty())) throw UsageError("empty experiment grid");

  OracleConfig base = oracle_config(o);
  RecursionConfig rcfg;
  std::vector<Row> rows;

  auto timed = [&](Row& row, auto&& body) {
    auto start = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const CapExceeded&) {
      row.status = "skipped:budget";
    } catch (const OverflowError&) {
      row.status = "skipped:budget";
    } catch (const Error& e) {
      row.status = "error";
      err << "row " << row.kind << " n=" << row.n << ": " << e.what() << "\n";
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  for (std::size_t n : o.ns) {
    for (const auto& ptext : o.ps) {
      Rational p = Rational::parse(ptext);
      for (const auto& solver : solvers) {
        Row row;
        row.kind = "wdisc", row.n = n, row.p = p.str(), row.solver = solver;
        timed(row, [&] {
          row.lb = lb_value(n, BoundVariant::proof);
          if (p.num() == 1 && p.den() >= 2) {
            row.k = static_cast<std::size_t>(p.den());
            row.reference = reference_bound(row.k, n, rcfg);
          }
          if (solver == "exact") {
            CertReport r = certify_wdisc_lb(p, n, base);
            row.value = r.exact_value;
            row.pass = r.pass ? "true" : "false";
          } else {
            StackedConstruction sc = build_stacked(p, n);
            WdiscResult r = solver == "greedy" ? wdisc_greedy(sc.matrix, sc.p) : wdisc_heuristic(sc.matrix, sc.p, base);
            row.value = r.value;
          }
        });
        rows.push_back(std::move(row));
      }
    }
    for (std::size_t k : o.ks) {
      for (const auto& solver : solvers) {
        Row row;
        row.kind = "multicolor", row.n = n, row.k = k, row.solver = solver;
        timed(row, [&] {
          if (k < 2) throw InvalidArgument("k must be at least 2");
          row.p = Rational(1, static_cast<std::int64_t>(k)).str();
          row.lb = lb_value(n, BoundVariant::proof);
          row.reference = reference_bound(k, n, rcfg);
          if (solver == "exact") {
            CertReport r = certify_multicolor_lb(k, n, base);
            row.value = r.odisc_value;
            row.pass = r.pass ? "true" : "false";
          } else {
            StackedConstruction sc = build_stacked(Rational(1, static_cast<std::int64_t>(k)), n);
            std::vector<RatMatrix> blocks(k, sc.matrix);
            RecursionConfig cfg;
            cfg.oracle = base;
            cfg.oracle.kind = solver == "greedy" ? OracleKind::greedy : OracleKind::local_search;
            row.value = eval_asymmetric(blocks, odisc_color(blocks, cfg).coloring);
          }
        });
        rows.push_back(std::move(row));
      }
    }
  }

  std::ostringstream csv;
  csv << "kind,n,k,p,solver,status,value,lb_value,reference_bound,pass";
  if (o.float_view) csv << ",value_float,lb_value_float";
  if (o.timing) csv << ",wall_ms";
  csv << "\n";
  std::size_t failed = 0;
  bool any_false = false;
  for (const auto& r : rows) {
    if (r.status != "ok") ++failed;
    if (r.pass == "false") any_false = true;
    bool ok = r.status == "ok";
    csv << r.kind << ',' << r.n << ',' << (r.k ? std::to_string(r.k) : "") << ',' << r.p << ',' << r.solver << ','
        << r.status << ',' << (ok && r.value ? r.value->str() : "") << ',' << (ok ? r.lb.str() : "") << ','
        << (ok && r.reference ? r.reference->str() : "") << ',' << r.pass;
    if (o.float_view)
      csv << ',' << (ok && r.value ? float_text(*r.value) : "") << ',' << (ok ? float_text(r.lb) : "");
    if (o.timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
      csv << ',' << buf;
    }
    csv << "\n";
  }
  if (o.csv_path.empty()) {
    out << csv.str();
  } else {
    write_file(o.csv_path, csv.str());
  }
  if (failed == rows.size()) return kBudgetExceeded;
  return any_false ? kCertificationFailure : kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Discrepancy constructions, certification and group fair division", "disclab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores); results do not depend on it");
  app.add_option("--cap", o.cap, "Enumeration cap (overrides DISCLAB_CAP)")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for every randomized step");
  app.add_option("--iters", o.iters, "Local-search step budget")->check(CLI::PositiveNumber);

  auto add_p = [&](CLI::App* s) { s->add_option("--p", o.p, "Weight a/b in (0,1)")->required(); };
  auto add_n = [&](CLI::App* s) { s->add_option("--n", o.n, "Order (power of two)")->required(); };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out_path, "Write the payload here"); };
  auto add_matrix = [&](CLI::App* s) {
    s->add_option("--matrix", o.matrices, "Matrix JSON file (repeat for several blocks)")->required();
  };
  auto add_oracle = [&](CLI::App* s) {
    s->add_option("--oracle", o.oracle, "exact, greedy or local-search")->capture_default_str();
  };
  auto add_notion = [&](CLI::App* s) {
    s->add_option("--notion", o.notion, "ef, prop or cd")->capture_default_str();
  };

  std::vector<std::pair<CLI::App*, std::function<int()>>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<int()> fn) {
    CLI::App* s = parent->add_subcommand(name, help);
    leaves.emplace_back(s, std::move(fn));
    return s;
  };

  CLI::App* construct = app.add_subcommand("construct", "Build matrices")->require_subcommand(1);
  {
    CLI::App* s = leaf(construct, "stacked", "Stacked Hadamard lower-bound matrix", [&] { return cmd_construct_stacked(o, out); });
    add_p(s), add_n(s), add_out(s);
    s = leaf(construct, "hadamard", "Sylvester Hadamard matrix", [&] { return cmd_construct_hadamard(o, out); });
    add_n(s), add_out(s);
    s = leaf(construct, "w", "W = (J + H)/2", [&] { return cmd_construct_w(o, out); });
    add_n(s), add_out(s);
  }

  CLI::App* wdisc = app.add_subcommand("wdisc", "p-weighted discrepancy")->require_subcommand(1);
  {
    CLI::App* s = leaf(wdisc, "exact", "Exact branch and bound", [&] { return cmd_wdisc_exact(o, out); });
    add_p(s), add_matrix(s);
    s = leaf(wdisc, "heur", "Local search (or --greedy)", [&] { return cmd_wdisc_heur(o, out); });
    add_p(s), add_matrix(s);
    s->add_flag("--greedy", o.greedy, "Single greedy pass instead of local search");
  }

  CLI::App* odisc = app.add_subcommand("odisc", "Asymmetric multicolor discrepancy")->require_subcommand(1);
  {
    CLI::App* s = leaf(odisc, "exact", "Exact search over all colorings", [&] { return cmd_odisc_exact(o, out); });
    add_matrix(s);
    s->add_option("--k", o.k, "Colors; one --matrix is repeated k times");
    s = leaf(odisc, "color", "Recursive halving with an audited certificate", [&] { return cmd_odisc_color(o, out); });
    add_matrix(s), add_oracle(s);
    s->add_option("--k", o.k, "Colors; one --matrix is repeated k times");
  }

  CLI::App* certify = app.add_subcommand("certify", "Exact certification")->require_subcommand(1);
  {
    CLI::App* s = leaf(certify, "wdisc-lb", "Lower bound on the stacked construction", [&] { return cmd_certify_wdisc(o, out); });
    add_p(s), add_n(s);
    s = leaf(certify, "multicolor-lb", "odisc >= wdisc >= bound at p = 1/k", [&] { return cmd_certify_multicolor(o, out); });
    add_n(s);
    s->add_option("--k", o.k, "Colors")->required();
    s = leaf(certify, "hadamard-lemma", "Norm inequality for W on unit and random vectors",
             [&] { return cmd_certify_hadamard_lemma(o, out); });
    add_n(s);
    s->add_option("--samples", o.samples, "Random vectors in [-8,8]^n")->capture_default_str();
  }

  CLI::App* fd = app.add_subcommand("fd", "Group fair division")->require_subcommand(1);
  {
    CLI::App* s = leaf(fd, "gen", "Generate an impossibility instance", [&] { return cmd_fd_gen(o, out); });
    add_matrix(s), add_notion(s), add_out(s);
    s->add_option("--k", o.k, "Groups")->required();
    s->add_option("--istar", o.istar, "Encoding groups 1..istar (prop only)")->capture_default_str();
    s->add_option("--sizes", o.sizes, "Group sizes, non-increasing")->delimiter(',');
    s = leaf(fd, "check", "Check an allocation against a notion", [&] { return cmd_fd_check(o, out); });
    add_notion(s);
    s->add_option("--instance", o.instance, "Instance JSON")->required();
    s->add_option("--allocation", o.allocation, "Allocation JSON")->required();
    s->add_option("--c", o.c, "Number of goods")->required();
    s = leaf(fd, "minc", "Smallest c for an allocation, or over all allocations", [&] { return cmd_fd_minc(o, out); });
    add_notion(s);
    s->add_option("--instance", o.instance, "Instance JSON")->required();
    s->add_option("--allocation", o.allocation, "Allocation JSON (omit for brute force)");
    s = leaf(fd, "allocate", "PROP allocation through asymmetric discrepancy", [&] { return cmd_fd_allocate(o, out); });
    add_oracle(s);
    s->add_option("--instance", o.instance, "Instance JSON")->required();
  }

  {
    CLI::App* s = leaf(&app, "experiment", "CSV sweep over constructions", [&] { return cmd_experiment(o, out, err); });
    s->add_option("--ns", o.ns, "Orders n")->delimiter(',');
    s->add_option("--ps", o.ps, "Weights a/b")->delimiter(',');
    s->add_option("--ks", o.ks, "Color counts for multicolor rows")->delimiter(',');
    s->add_option("--solver", o.solvers, "exact, heur or greedy")->delimiter(',');
    s->add_option("--csv", o.csv_path, "Write CSV here instead of stdout");
    s->add_flag("--float-view", o.float_view, "Add decimal columns");
    s->add_flag("--timing", o.timing, "Add a wall time column (not byte-stable)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    for (auto& [sub, fn] : leaves)
      if (sub->parsed()) return fn();
    err << "no command given\n";
    return kUsageError;
  } catch (const CapExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const OverflowError& e) {
    err << "numeric range exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kCertificationFailure;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    err << "bad JSON: " << e.what() << "\n";
    return kUsageError;
  }
}

} // namespace disclab::cli
