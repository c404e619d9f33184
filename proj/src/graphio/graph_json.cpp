// Copyright 2026 The vsel Authors
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

#include "vsel/graphio/graph_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vsel/error.hpp"

namespace vsel::graphio {

using nlohmann::json;

namespace {

std::uint32_t as_index(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      v.get<long long>() > static_cast<long long>(UINT32_MAX)) {
    throw SchemaError(field + ": expected a non-negative integer");
  }
  return static_cast<std::uint32_t>(v.get<long long>());
}

}  // namespace

std::string serialize_graph(const ProgramGraph& g) {
  json edges = json::object();
  for (EdgeSet s : kAllEdgeSets) {
    json list = json::array();
    for (const auto& [src, dst] : g.edge_set(s)) list.push_back({src, dst});
    edges[std::string(edge_set_name(s))] = std::move(list);
  }
  json j = {
      {"id", g.id},
      {"property", std::string(property_name(g.property))},
      {"num_nodes", g.num_nodes()},
      {"node_kinds", g.node_kinds},
      {"edges", std::move(edges)},
  };
  if (!g.vocab_fingerprint.empty()) j["vocab_fingerprint"] = g.vocab_fingerprint;
  return j.dump();
}

ProgramGraph deserialize_graph(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("graph: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("graph: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "id" && key != "property" && key != "num_nodes" && key != "node_kinds" &&
        key != "edges" && key != "vocab_fingerprint") {
      throw SchemaError("graph: unknown field '" + key + "'");
    }
  }
  ProgramGraph g;
  if (!j.contains("id") || !j["id"].is_string()) throw SchemaError("id: expected a string");
  g.id = j["id"].get<std::string>();
  if (!j.contains("property") || !j["property"].is_string()) {
    throw SchemaError("property: expected a string");
  }
  auto prop = parse_property(j["property"].get<std::string>());
  if (!prop) throw SchemaError("property: unknown property '" + j["property"].get<std::string>() + "'");
  g.property = *prop;
  if (!j.contains("node_kinds") || !j["node_kinds"].is_array()) {
    throw SchemaError("node_kinds: expected an array");
  }
  for (const auto& k : j["node_kinds"]) g.node_kinds.push_back(as_index(k, "node_kinds"));
  if (!j.contains("num_nodes")) throw SchemaError("num_nodes: missing");
  if (as_index(j["num_nodes"], "num_nodes") != g.node_kinds.size()) {
    throw SchemaError("num_nodes: does not match node_kinds length");
  }
  if (j.contains("vocab_fingerprint")) {
    if (!j["vocab_fingerprint"].is_string()) throw SchemaError("vocab_fingerprint: expected a string");
    g.vocab_fingerprint = j["vocab_fingerprint"].get<std::string>();
  }
  if (!j.contains("edges") || !j["edges"].is_object()) throw SchemaError("edges: expected an object");
  for (const auto& [key, list] : j["edges"].items()) {
    auto set = parse_edge_set(key);
    if (!set) throw SchemaError("edges: unknown edge set '" + key + "'");
    const std::string field = "edges." + key;
    if (!list.is_array()) throw SchemaError(field + ": expected an array");
    for (const auto& e : list) {
      if (!e.is_array() || e.size() != 2) throw SchemaError(field + ": expected [src, dst] pairs");
      g.edge_set(*set).emplace_back(as_index(e[0], field), as_index(e[1], field));
    }
  }
  g.canonicalize();
  return g;
}

ProgramGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open graph '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize_graph(ss.str());
}

void save_graph(const ProgramGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write graph '" + path + "'");
  out << serialize_graph(g) << '\n';
}

}  // namespace vsel::graphio
