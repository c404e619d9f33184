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
#include <vector>

#include "vsel/frontend/ast.hpp"
#include "vsel/frontend/dataflow.hpp"
#include "vsel/frontend/icfg.hpp"
#include "vsel/graphio/program_graph.hpp"
#include "vsel/graphio/vocabulary.hpp"

namespace vsel::frontend {

inline constexpr std::size_t kDefaultNodeCap = 100000;

/// Vocabulary index of an AST node ("Kind:lexeme" before "Kind").
std::size_t node_vocab_index(const AstNode& node, const graphio::TokenVocabulary& vocab);

/// AST nodes become graph nodes one-for-one. Edge set AST holds
/// parent->child edges, ICFG the merged control edges, DFG the def-use
/// pairs. Throws GraphTooLarge when the node count exceeds node_cap.
graphio::ProgramGraph assemble_graph(const Ast& ast, const ControlEdges& icfg, const DataEdges& dfg,
                                     const graphio::TokenVocabulary& vocab,
                                     std::size_t node_cap = kDefaultNodeCap);

struct Extraction {
  graphio::ProgramGraph graph;
  std::vector<std::string> diagnostics;
};

/// Full pipeline: tokenize, parse, ICFG, reaching definitions, assemble.
Extraction extract_program(std::string_view source, const std::string& program_id,
                           graphio::PropertyKind property, const graphio::TokenVocabulary& vocab,
                           std::size_t node_cap = kDefaultNodeCap);

}  // namespace vsel::frontend
