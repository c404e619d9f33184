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

#include "fixtures.hpp"

#include <algorithm>
#include <set>

namespace vsel::fixture {

using graphio::Edge;
using graphio::EdgeSet;
using graphio::ProgramGraph;

graphio::ProgramGraph random_graph(Rng& rng, std::size_t n, std::size_t vocab_size,
                                   double density) {
  ProgramGraph g;
  g.id = "rand" + std::to_string(rng.index(1u << 30));
  g.property = graphio::property_from_index(rng.index(graphio::kPropertyCount));
  for (std::size_t i = 0; i < n; ++i) g.node_kinds.push_back(static_cast<std::uint32_t>(rng.index(vocab_size)));
  for (auto es : graphio::kAllEdgeSets) {
    std::set<Edge> edges;
    const auto want = static_cast<std::size_t>(density * static_cast<double>(n));
    for (std::size_t k = 0; k < want; ++k) {
      edges.emplace(static_cast<std::uint32_t>(rng.index(n)), static_cast<std::uint32_t>(rng.index(n)));
    }
    g.edge_set(es).assign(edges.begin(), edges.end());
  }
  return g;
}

std::vector<graphio::ProgramGraph> small_graphs() {
  std::vector<ProgramGraph> out(3);
  out[0].id = "path5";
  out[0].node_kinds = {0, 1, 2, 3, 1};
  out[0].edge_set(EdgeSet::kAst) = {{0, 1}, {1, 2}, {1, 3}, {3, 4}};
  out[0].edge_set(EdgeSet::kIcfg) = {{1, 2}, {2, 3}, {3, 4}, {4, 1}};
  out[0].edge_set(EdgeSet::kDfg) = {{2, 4}, {3, 4}};

  out[1].id = "branch7";
  out[1].property = graphio::PropertyKind::kTermination;
  out[1].node_kinds = {0, 4, 2, 5, 6, 2, 3};
  out[1].edge_set(EdgeSet::kAst) = {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {1, 6}};
  out[1].edge_set(EdgeSet::kIcfg) = {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 6}, {6, 1}};
  out[1].edge_set(EdgeSet::kDfg) = {{2, 4}, {2, 5}, {4, 6}, {5, 6}};

  out[2].id = "loop8";
  out[2].property = graphio::PropertyKind::kOverflow;
  out[2].node_kinds = {0, 1, 7, 2, 5, 3, 6, 2};
  out[2].edge_set(EdgeSet::kAst) = {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}, {1, 7}};
  out[2].edge_set(EdgeSet::kIcfg) = {{1, 2}, {2, 3}, {3, 5}, {5, 6}, {6, 3}, {3, 7}, {7, 1}};
  out[2].edge_set(EdgeSet::kDfg) = {{2, 4}, {2, 6}, {6, 4}, {6, 6}};
  for (auto& g : out) g.canonicalize();
  return out;
}

graphio::TokenVocabulary planted_vocab() {
  return graphio::TokenVocabulary({"Unknown", "WhileStmt", "BinaryOperator", "DeclStmt", "IfStmt",
                                   "ReturnStmt", "CallExpr", "DeclRefExpr", "IntegerLiteral",
                                   "UnaryOperator", "CompoundStmt", "VarDecl"});
}

PlantedTask planted_task(std::size_t count, std::uint64_t seed, const PlantedOptions& opt) {
  PlantedTask t;
  t.vocab = planted_vocab();
  t.portfolio = {"loopy", "middle", "straight"};
  const auto kWhile = static_cast<std::uint32_t>(t.vocab.lookup("WhileStmt"));
  const auto kBinOp = static_cast<std::uint32_t>(t.vocab.lookup("BinaryOperator"));
  const std::uint32_t first_filler = 3;
  const auto filler_count = static_cast<std::uint32_t>(
      std::min<std::size_t>(opt.filler_kinds, t.vocab.size() - first_filler));
  Rng rng(seed);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const bool loop = idx % 2 == 0;
    const std::size_t n = opt.min_nodes + rng.index(opt.max_nodes - opt.min_nodes + 1);
    ProgramGraph g;
    g.id = "planted" + std::to_string(idx);
    g.property = graphio::property_from_index(opt.random_property ? rng.index(graphio::kPropertyCount) : 0);
    g.vocab_fingerprint = t.vocab.fingerprint();
    for (std::size_t i = 0; i < n; ++i) {
      g.node_kinds.push_back(first_filler + static_cast<std::uint32_t>(rng.index(filler_count)));
    }
    // Control chain 0 -> 1 -> ... -> n-1 with the while node somewhere in
    // the middle and the operator a few steps after it.
    const auto w = static_cast<std::uint32_t>(1 + rng.index(n / 2));
    const auto b = static_cast<std::uint32_t>(w + 2 + rng.index(n - w - 2));
    g.node_kinds[w] = kWhile;
    g.node_kinds[b] = kBinOp;
    auto& icfg = g.edge_set(EdgeSet::kIcfg);
    for (std::uint32_t i = 0; i + 1 < n; ++i) icfg.emplace_back(i, i + 1);
    const Edge planted = loop ? Edge{b, w} : Edge{w, b};
    icfg.push_back(planted);
    auto& ast = g.edge_set(EdgeSet::kAst);
    for (std::uint32_t i = 1; i < n; ++i) ast.emplace_back(static_cast<std::uint32_t>(rng.index(i)), i);
    std::set<Edge> dfg;
    for (int k = 0; k < 3; ++k) {
      auto s = static_cast<std::uint32_t>(rng.index(n));
      auto d = static_cast<std::uint32_t>(rng.index(n));
      if (s != w && d != w && s != b && d != b) dfg.emplace(s, d);
    }
    g.edge_set(EdgeSet::kDfg).assign(dfg.begin(), dfg.end());
    g.canonicalize();

    graphio::LabeledInstance inst;
    inst.graph = std::move(g);
    inst.labels = loop ? std::vector<double>{2.0, 1.0, 0.0} : std::vector<double>{0.0, 1.0, 2.0};
    inst.solved = loop ? std::vector<bool>{true, false, false} : std::vector<bool>{false, false, true};
    t.instances.push_back(std::move(inst));
    t.has_loop.push_back(loop);
    t.planted.push_back(planted);
  }
  return t;
}

}  // namespace vsel::fixture
