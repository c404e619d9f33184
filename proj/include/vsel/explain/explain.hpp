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
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsel/graphio/program_graph.hpp"
#include "vsel/graphio/vocabulary.hpp"
#include "vsel/model/model.hpp"

namespace vsel::explain {

struct ExplainConfig {
  std::size_t iters = 100;
  double lr = 0.01;
  double lambda_size = 0.05;
  double lambda_entropy = 0.1;
  double init_logit = 0.0;
  double init_noise = 0.0;  // uniform jitter on the initial logits, drawn from seed
  std::uint64_t seed = 0;
  // Sets to mask; edges of the other enabled sets keep weight 1.
  std::array<bool, graphio::kEdgeSetCount> mask_sets = {true, true, true};
};

struct MaskedEdge {
  graphio::EdgeSet set = graphio::EdgeSet::kAst;
  std::size_t index = 0;  // position inside its edge set
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
};

/// One score per masked edge, in message order (AST, ICFG, DFG; each set
/// in its canonical order).
struct EdgeMask {
  std::string graph_id;
  std::vector<MaskedEdge> edges;
  std::vector<double> scores;          // sigmoid(logit), in (0, 1)
  std::vector<double> objective_trace;  // objective before each step, plus the final value
  std::vector<double> original_scores;  // unmasked model output
};

/// Plain gradient descent on per-edge logits. The objective is
///   |s(masked) - s(original)|^2 + l_size * mean(mask) + l_ent * sum H(mask).
/// Throws EmptyGraph; VocabMismatch propagates from the model.
EdgeMask explain(const model::ModelParameters& params, const graphio::ProgramGraph& g,
                 const ExplainConfig& cfg = {});

/// 5 for n < 50, floor(n / 10) otherwise.
std::size_t report_size(std::size_t n);

struct ReportEntry {
  std::size_t rank = 0;  // 1-based
  MaskedEdge edge;
  std::string src_kind;
  std::string dst_kind;
  double score = 0.0;
};

struct ExplanationReport {
  std::string graph_id;
  std::size_t m = 0;                 // report_size(edge count)
  std::vector<ReportEntry> entries;  // min(m, edge count), descending score, ties by mask order
};

/// Kind names come from `vocab` when given, else the numeric index.
ExplanationReport top_m_edges(const EdgeMask& mask, const graphio::ProgramGraph& g,
                              const graphio::TokenVocabulary* vocab = nullptr);

nlohmann::json to_json(const ExplanationReport& report, const EdgeMask& mask);

/// Whole graph; report edges drawn bold and labelled with their rank, the
/// rest light.
std::string to_dot(const ExplanationReport& report, const EdgeMask& mask, const graphio::ProgramGraph& g,
                   const graphio::TokenVocabulary* vocab = nullptr);

}  // namespace vsel::explain
