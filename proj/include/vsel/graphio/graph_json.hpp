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

#include <string>
#include <string_view>

#include "vsel/graphio/program_graph.hpp"

namespace vsel::graphio {

// Graph file format (canonical: sorted keys, sorted edges, no whitespace):
//   {"edges":{"AST":[[s,d],...],"DFG":[...],"ICFG":[...]},"id":"...",
//    "node_kinds":[...],"num_nodes":N,"property":"ReachSafety"}
// plus an optional "vocab_fingerprint" string.
std::string serialize_graph(const ProgramGraph& g);

/// Throws SchemaError naming the offending field.
ProgramGraph deserialize_graph(std::string_view text);

ProgramGraph load_graph(const std::string& path);
void save_graph(const ProgramGraph& g, const std::string& path);

}  // namespace vsel::graphio
