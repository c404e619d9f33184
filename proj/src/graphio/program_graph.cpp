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

#include "vsel/graphio/program_graph.hpp"

#include <algorithm>

#include "vsel/error.hpp"

namespace vsel::graphio {

namespace {

constexpr std::array<std::string_view, kPropertyCount> kPropertyNames = {
    "ReachSafety", "Termination", "MemSafety", "Overflow"};
constexpr std::array<std::string_view, kEdgeSetCount> kEdgeSetNames = {"AST", "ICFG", "DFG"};

}  // namespace

PropertyKind property_from_index(std::size_t index) {
  if (index >= kPropertyCount) {
    throw Error(ErrorCode::kIndex, "property index " + std::to_string(index) + " out of range");
  }
  return static_cast<PropertyKind>(index);
}

std::string_view property_name(PropertyKind p) { return kPropertyNames[encode(p)]; }

std::optional<PropertyKind> parse_property(std::string_view name) {
  for (std::size_t i = 0; i < kPropertyCount; ++i) {
    if (kPropertyNames[i] == name) return static_cast<PropertyKind>(i);
  }
  if (name == "reach-safety" || name == "unreach-call" || name == "reach") {
    return PropertyKind::kReachSafety;
  }
  if (name == "termination") return PropertyKind::kTermination;
  if (name == "mem-safety" || name == "valid-memsafety" || name == "memsafety") {
    return PropertyKind::kMemSafety;
  }
  if (name == "overflow" || name == "no-overflow") return PropertyKind::kOverflow;
  return std::nullopt;
}

std::string_view edge_set_name(EdgeSet s) { return kEdgeSetNames[static_cast<std::size_t>(s)]; }

std::optional<EdgeSet> parse_edge_set(std::string_view name) {
  for (std::size_t i = 0; i < kEdgeSetCount; ++i) {
    if (kEdgeSetNames[i] == name) return static_cast<EdgeSet>(i);
  }
  return std::nullopt;
}

std::size_t ProgramGraph::num_edges() const {
  std::size_t n = 0;
  for (const auto& es : edges) n += es.size();
  return n;
}

void ProgramGraph::canonicalize() {
  for (auto& es : edges) std::sort(es.begin(), es.end());
  validate();
}

void ProgramGraph::validate(std::size_t vocab_size) const {
  const std::size_t n = node_kinds.size();
  if (vocab_size != 0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (node_kinds[i] >= vocab_size) {
        throw SchemaError("node_kinds[" + std::to_string(i) + "]: kind index out of range");
      }
    }
  }
  for (std::size_t s = 0; s < kEdgeSetCount; ++s) {
    std::vector<Edge> sorted = edges[s];
    for (const auto& [src, dst] : sorted) {
      if (src >= n || dst >= n) {
        throw SchemaError("edges." + std::string(kEdgeSetNames[s]) + ": edge endpoint out of range");
      }
    }
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw SchemaError("edges." + std::string(kEdgeSetNames[s]) + ": duplicate edge");
    }
  }
}

ProgramGraph permute_nodes(const ProgramGraph& g, const std::vector<std::uint32_t>& perm) {
  if (perm.size() != g.num_nodes()) {
    throw Error(ErrorCode::kInvalidArgument, "permutation length does not match node count");
  }
  ProgramGraph out = g;
  for (std::size_t i = 0; i < perm.size(); ++i) out.node_kinds[perm[i]] = g.node_kinds[i];
  for (std::size_t s = 0; s < kEdgeSetCount; ++s) {
    for (auto& [src, dst] : out.edges[s]) {
      src = perm[src];
      dst = perm[dst];
    }
    std::sort(out.edges[s].begin(), out.edges[s].end());
  }
  return out;
}

}  // namespace vsel::graphio
