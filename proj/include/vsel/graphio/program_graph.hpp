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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vsel::graphio {

enum class PropertyKind : std::uint8_t { kReachSafety = 0, kTermination = 1, kMemSafety = 2, kOverflow = 3 };

inline constexpr std::size_t kPropertyCount = 4;

/// Index in [0, 4); a bijection.
inline std::size_t encode(PropertyKind p) { return static_cast<std::size_t>(p); }
PropertyKind property_from_index(std::size_t index);
std::string_view property_name(PropertyKind p);
/// Accepts the canonical names ("ReachSafety") and the SV-COMP style
/// lower-case spellings ("reach-safety", "unreach-call", "no-overflow", ...).
std::optional<PropertyKind> parse_property(std::string_view name);

enum class EdgeSet : std::uint8_t { kAst = 0, kIcfg = 1, kDfg = 2 };
inline constexpr std::size_t kEdgeSetCount = 3;
inline constexpr std::array<EdgeSet, kEdgeSetCount> kAllEdgeSets = {EdgeSet::kAst, EdgeSet::kIcfg,
                                                                    EdgeSet::kDfg};
std::string_view edge_set_name(EdgeSet s);
std::optional<EdgeSet> parse_edge_set(std::string_view name);

using Edge = std::pair<std::uint32_t, std::uint32_t>;  // (src, dst)

/// Program graph: per-node vocabulary indices plus three directed edge sets.
struct ProgramGraph {
  std::string id;
  PropertyKind property = PropertyKind::kReachSafety;
  std::vector<std::uint32_t> node_kinds;
  std::array<std::vector<Edge>, kEdgeSetCount> edges;
  std::string vocab_fingerprint;  // optional; empty when unknown

  std::size_t num_nodes() const { return node_kinds.size(); }
  std::size_t num_edges() const;
  const std::vector<Edge>& edge_set(EdgeSet s) const { return edges[static_cast<std::size_t>(s)]; }
  std::vector<Edge>& edge_set(EdgeSet s) { return edges[static_cast<std::size_t>(s)]; }

  /// Sorts every edge set; duplicates are a SchemaError.
  void canonicalize();

  /// Checks index ranges and duplicate-freeness; throws SchemaError.
  void validate(std::size_t vocab_size = 0) const;

  friend bool operator==(const ProgramGraph&, const ProgramGraph&) = default;
};

/// Relabels nodes: new id of old node i is perm[i]. Edge sets are re-sorted.
ProgramGraph permute_nodes(const ProgramGraph& g, const std::vector<std::uint32_t>& perm);

}  // namespace vsel::graphio
