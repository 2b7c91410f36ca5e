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

#include "disclab/json_io.hpp"

#include <string>

#include "disclab/error.hpp"

namespace disclab::json_io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw InvalidArgument(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

Json rational_list(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

} // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw InvalidArgument("rational must be a string \"a/b\" or an integer");
}

Json to_json(const RatMatrix& a) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) entries.push_back(rational_list(a.row(i)));
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

Json to_json(const SignMatrix& h) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < h.order(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < h.order(); ++j) row.push_back(h.at(i, j) == 1 ? "1" : "-1");
    entries.push_back(std::move(row));
  }
  return Json{{"rows", h.order()}, {"cols", h.order()}, {"entries", std::move(entries)}};
}

RatMatrix matrix_from_json(const Json& j) {
  std::size_t rows = size_field(j, "rows");
  std::size_t cols = size_field(j, "cols");
  const Json& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != rows) throw DimensionError("matrix 'entries' must have 'rows' rows");
  std::vector<Rational> flat;
  flat.reserve(rows * cols);
  for (const auto& row : entries) {
    if (!row.is_array() || row.size() != cols) throw DimensionError("matrix row length must equal 'cols'");
    for (const auto& e : row) flat.push_back(rational_from_json(e));
  }
  return RatMatrix(rows, cols, std::move(flat));
}

Json to_json(const WdiscResult& r) {
  Json witness = Json::array();
  for (auto b : r.witness) witness.push_back(int{b});
  return Json{{"value", to_json(r.value)}, {"witness", std::move(witness)}, {"exact", r.exact},
              {"nodes", r.nodes_explored}};
}

Json to_json(const OdiscResult& r) {
  return Json{{"value", to_json(r.value)}, {"witness", r.witness}, {"exact", r.exact}, {"nodes", r.nodes_explored}};
}

Json to_json(const StackedConstruction& c) {
  return Json{{"n", c.n},
              {"p", to_json(c.requested_p)},
              {"p_effective", to_json(c.p)},
              {"t", c.t},
              {"rows", c.matrix.rows()},
              {"cols", c.matrix.cols()},
              {"delta", to_json(c.delta)}};
}

Json to_json(const CertReport& r) {
  Json out{{"kind", r.kind}, {"construction", to_json(r.construction)}};
  if (r.kind == "multicolor-lb") {
    out["k"] = r.k;
    out["odisc_value"] = to_json(r.odisc_value);
    out["wdisc_value"] = to_json(r.exact_value);
  }
  out["exact_value"] = to_json(r.exact_value);
  out["bound"] = to_json(r.bound);
  out["pass"] = r.pass;
  Json witness = Json::array();
  for (auto b : r.witness) witness.push_back(int{b});
  out["witness"] = std::move(witness);
  if (!r.coloring.empty()) out["coloring"] = r.coloring;
  out["nodes"] = r.nodes;
  return out;
}

Json to_json(const CertificateNode& node) {
  Json out{{"colors", Json::array({node.color_lo, node.color_hi})}, {"columns", node.columns}};
  if (!node.is_leaf()) {
    out["k1"] = node.k1;
    out["k2"] = node.k2;
    out["p"] = to_json(node.p);
    out["oracle_value"] = to_json(node.oracle_value);
    out["low"] = to_json(node.children[0]);
    out["high"] = to_json(node.children[1]);
  }
  out["bounds"] = rational_list(node.bounds);
  return out;
}

Json to_json(const FairDivInstance& inst) {
  Json groups = Json::array();
  for (const auto& group : inst.utilities) {
    Json agents = Json::array();
    for (const auto& u : group) agents.push_back(rational_list(u));
    groups.push_back(std::move(agents));
  }
  return Json{{"k", inst.k}, {"group_sizes", inst.group_sizes}, {"m", inst.m}, {"groups", std::move(groups)}};
}

FairDivInstance instance_from_json(const Json& j) {
  FairDivInstance inst;
  inst.k = size_field(j, "k");
  inst.m = size_field(j, "m");
  const Json& sizes = field(j, "group_sizes");
  if (!sizes.is_array()) throw InvalidArgument("'group_sizes' must be an array");
  for (const auto& s : sizes) {
    if (!s.is_number_integer() || s.get<std::int64_t>() < 0) throw InvalidArgument("group sizes must be integers");
    inst.group_sizes.push_back(s.get<std::size_t>());
  }
  const Json& groups = field(j, "groups");
  if (!groups.is_array()) throw InvalidArgument("'groups' must be an array");
  for (const auto& group : groups) {
    if (!group.is_array()) throw InvalidArgument("each group must be an array of agents");
    std::vector<std::vector<Rational>> agents;
    for (const auto& agent : group) {
      if (!agent.is_array()) throw InvalidArgument("each agent must be an array of utilities");
      std::vector<Rational> u;
      for (const auto& v : agent) u.push_back(rational_from_json(v));
      agents.push_back(std::move(u));
    }
    inst.utilities.push_back(std::move(agents));
  }
  inst.validate();
  return inst;
}

Json to_json(const Allocation& a) { return Json{{"bundles", a.bundles}}; }

Allocation allocation_from_json(const Json& j) {
  const Json& bundles = field(j, "bundles");
  if (!bundles.is_array()) throw InvalidArgument("'bundles' must be an array");
  Allocation a;
  for (const auto& b : bundles) {
    if (!b.is_array()) throw InvalidArgument("each bundle must be an array of good indices");
    std::vector<std::size_t> goods;
    for (const auto& g : b) {
      if (!g.is_number_integer() || g.get<std::int64_t>() < 0) throw InvalidArgument("good indices must be integers");
      goods.push_back(g.get<std::size_t>());
    }
    a.bundles.push_back(std::move(goods));
  }
  return a;
}

} // namespace disclab::json_io
