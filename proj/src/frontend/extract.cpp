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

#include "vsel/frontend/extract.hpp"

#include <algorithm>

#include "vsel/frontend/parser.hpp"

namespace vsel::frontend {

std::size_t node_vocab_index(const AstNode& node, const graphio::TokenVocabulary& vocab) {
  return vocab.lookup(node_kind_name(node.kind), node.text);
}

graphio::ProgramGraph assemble_graph(const Ast& ast, const ControlEdges& icfg, const DataEdges& dfg,
                                     const graphio::TokenVocabulary& vocab, std::size_t node_cap) {
  if (ast.size() > node_cap) {
    throw Error(ErrorCode::kGraphTooLarge, "graph has " + std::to_string(ast.size()) +
                                               " nodes, cap is " + std::to_string(node_cap));
  }
  graphio::ProgramGraph g;
  g.vocab_fingerprint = vocab.fingerprint();
  g.node_kinds.reserve(ast.size());
  for (const auto& n : ast.nodes) {
    g.node_kinds.push_back(static_cast<std::uint32_t>(node_vocab_index(n, vocab)));
  }
  auto& ast_edges = g.edge_set(graphio::EdgeSet::kAst);
  for (NodeId id = 0; id < ast.size(); ++id) {
    for (NodeId c : ast[id].children) ast_edges.emplace_back(id, c);
  }
  auto& cf = g.edge_set(graphio::EdgeSet::kIcfg);
  for (const auto& e : icfg.edges) cf.emplace_back(e.src, e.dst);
  auto& df = g.edge_set(graphio::EdgeSet::kDfg);
  for (const auto& e : dfg.edges) df.emplace_back(e.def, e.use);
  for (auto& es : g.edges) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
  }
  g.validate(vocab.size());
  return g;
}

Extraction extract_program(std::string_view source, const std::string& program_id,
                           graphio::PropertyKind property, const graphio::TokenVocabulary& vocab,
                           std::size_t node_cap) {
  Ast ast = parse_source(source);
  ControlEdges icfg = build_icfg(ast);
  DataEdges dfg = reaching_definitions(ast, icfg);
  Extraction out;
  out.graph = assemble_graph(ast, icfg, dfg, vocab, node_cap);
  out.graph.id = program_id;
  out.graph.property = property;
  out.diagnostics = std::move(icfg.diagnostics);
  return out;
}

}  // namespace vsel::frontend
