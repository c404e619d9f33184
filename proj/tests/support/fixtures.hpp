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

#include <cstdint>
#include <string>
#include <vector>

#include "vsel/graphio/labels.hpp"
#include "vsel/graphio/program_graph.hpp"
#include "vsel/graphio/vocabulary.hpp"
#include "vsel/random.hpp"

namespace vsel::fixture {

/// Random valid graph with n nodes; each edge set gets about `density * n`
/// distinct edges.
graphio::ProgramGraph random_graph(Rng& rng, std::size_t n, std::size_t vocab_size,
                                   double density = 1.5);

/// Three hand-wired graphs of 5, 7 and 8 nodes; every edge set nonempty.
std::vector<graphio::ProgramGraph> small_graphs();

// Planted-signal synthetic task. Every graph holds exactly one WhileStmt
// node and one BinaryOperator node; the other nodes are filler kinds drawn
// from the same distribution in both classes (a single kind by default, so
// the kind histogram carries no class information). The sole difference is the direction
// of one ICFG edge between those two nodes: loop graphs have the back edge
// BinaryOperator -> WhileStmt, the others the forward edge
// WhileStmt -> BinaryOperator.
struct PlantedTask {
  graphio::TokenVocabulary vocab;
  std::vector<std::string> portfolio;  // {"loopy", "middle", "straight"}
  std::vector<graphio::LabeledInstance> instances;
  std::vector<bool> has_loop;
  std::vector<graphio::Edge> planted;  // the back edge (ICFG) or the forward one
};

graphio::TokenVocabulary planted_vocab();

/// Alternates loop and non-loop graphs. Labels: loop graphs rank
/// loopy > middle > straight and only "loopy" solves; the rest the reverse.
struct PlantedOptions {
  std::size_t min_nodes = 8;
  std::size_t max_nodes = 14;
  bool random_property = false;  // else every graph is ReachSafety
  std::size_t filler_kinds = 1;   // how many of the filler kinds to draw from
};
PlantedTask planted_task(std::size_t count, std::uint64_t seed, const PlantedOptions& opt = {});

}  // namespace vsel::fixture
