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

#include "vsel/explain/explain.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "vsel/error.hpp"
#include "vsel/random.hpp"

namespace vsel::explain {

using tensor::Matrix;
using tensor::Tape;
using tensor::Tensor;

namespace {

Tensor objective(Tape& t, const model::ModelParameters& params, const graphio::ProgramGraph& g,
                 const Tensor& logits, const std::vector<std::uint32_t>& slots, std::size_t num_maskable,
                 const Matrix& fixed, const Tensor& target, const ExplainConfig& cfg) {
  Tensor m = t.sigmoid(logits);
  Tensor full = t.add(t.scatter_add_rows(m, slots, num_maskable), Tensor::constant(fixed));
  Tensor diff = t.sub(model::forward(t, g, params, &full), target);
  Tensor fidelity = t.sum_all(t.elementwise_mul(diff, diff));
  const double n = static_cast<double>(slots.size());
  Tensor size = t.scalar_mul(t.sum_all(m), 1.0 / n);
  Tensor one_minus = t.add_scalar(t.scalar_mul(m, -1.0), 1.0);
  Tensor ent = t.scalar_mul(
      t.sum_all(t.add(t.elementwise_mul(m, t.log(m)), t.elementwise_mul(one_minus, t.log(one_minus)))), -1.0);
  return t.add(t.add(fidelity, t.scalar_mul(size, cfg.lambda_size)), t.scalar_mul(ent, cfg.lambda_entropy));
}

}  // namespace

EdgeMask explain(const model::ModelParameters& params, const graphio::ProgramGraph& g,
                 const ExplainConfig& cfg) {
  EdgeMask out;
  out.graph_id = g.id;
  {
    Tape t(false);
    out.original_scores = model::predict(g, params).scores;
  }
  const model::MessageEdges msg = model::message_edges(g, params.config.edge_sets);
  std::vector<std::uint32_t> slots;  // message position of each masked edge
  Matrix fixed(msg.num_maskable, 1, 0.0);
  for (std::size_t p = 0; p < msg.num_maskable; ++p) {
    const auto [set, idx] = msg.origin[p];
    if (cfg.mask_sets[static_cast<std::size_t>(set)]) {
      slots.push_back(static_cast<std::uint32_t>(p));
      const auto& e = g.edge_set(set)[idx];
      out.edges.push_back({set, idx, e.first, e.second});
    } else {
      fixed(p, 0) = 1.0;
    }
  }
  if (slots.empty()) return out;

  Rng rng(cfg.seed);
  Matrix init(slots.size(), 1, cfg.init_logit);
  if (cfg.init_noise > 0.0) {
    for (double& x : init.values()) x += rng.uniform(-cfg.init_noise, cfg.init_noise);
  }
  Tensor logits = Tensor::parameter(std::move(init));
  const Tensor target = Tensor::constant(Matrix::row(out.original_scores));
  for (std::size_t it = 0; it < cfg.iters; ++it) {
    Tape t;
    Tensor obj = objective(t, params, g, logits, slots, msg.num_maskable, fixed, target, cfg);
    out.objective_trace.push_back(obj.item());
    logits.zero_grad();
    t.backward(obj);
    Matrix& w = logits.mutable_value();
    const Matrix& grad = logits.grad();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.lr * grad[i];
  }
  {
    Tape t(false);
    out.objective_trace.push_back(
        objective(t, params, g, logits, slots, msg.num_maskable, fixed, target, cfg).item());
  }
  for (double x : logits.value().values()) out.scores.push_back(1.0 / (1.0 + std::exp(-x)));
  return out;
}

std::size_t report_size(std::size_t n) { return n < 50 ? 5 : n / 10; }

namespace {

std::string kind_name(const graphio::ProgramGraph& g, std::uint32_t node, const graphio::TokenVocabulary* vocab) {
  const std::uint32_t k = g.node_kinds.at(node);
  if (vocab && k < vocab->size()) return vocab->name(k);
  return std::to_string(k);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string dot_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

}  // namespace

ExplanationReport top_m_edges(const EdgeMask& mask, const graphio::ProgramGraph& g,
                              const graphio::TokenVocabulary* vocab) {
  ExplanationReport r;
  r.graph_id = mask.graph_id;
  const std::size_t n = mask.scores.size();
  r.m = report_size(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mask.scores[a] > mask.scores[b]; });
  for (std::size_t i = 0; i < std::min(r.m, n); ++i) {
    const MaskedEdge& e = mask.edges[order[i]];
    r.entries.push_back({i + 1, e, kind_name(g, e.src, vocab), kind_name(g, e.dst, vocab), mask.scores[order[i]]});
  }
  return r;
}

nlohmann::json to_json(const ExplanationReport& report, const EdgeMask& mask) {
  nlohmann::json top = nlohmann::json::array();
  for (const auto& e : report.entries) {
    top.push_back({{"rank", e.rank},
                   {"edge_set", std::string(graphio::edge_set_name(e.edge.set))},
                   {"edge_index", e.edge.index},
                   {"src", e.edge.src},
                   {"dst", e.edge.dst},
                   {"src_kind", e.src_kind},
                   {"dst_kind", e.dst_kind},
                   {"score", e.score}});
  }
  return {{"graph_id", report.graph_id},
          {"m", report.m},
          {"edge_count", mask.scores.size()},
          {"top_edges", top},
          {"original_scores", mask.original_scores},
          {"final_objective", mask.objective_trace.empty() ? 0.0 : mask.objective_trace.back()}};
}

std::string to_dot(const ExplanationReport& report, const EdgeMask& mask, const graphio::ProgramGraph& g,
                   const graphio::TokenVocabulary* vocab) {
  // (set, index) -> position in the mask
  std::map<std::pair<graphio::EdgeSet, std::size_t>, std::size_t> pos_of;
  for (std::size_t i = 0; i < mask.edges.size(); ++i) pos_of[{mask.edges[i].set, mask.edges[i].index}] = i;
  std::map<std::pair<graphio::EdgeSet, std::size_t>, std::size_t> rank_of;
  for (const auto& e : report.entries) rank_of[{e.edge.set, e.edge.index}] = e.rank;

  std::ostringstream os;
  os << "digraph \"" << dot_escape(g.id) << "\" {\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::uint32_t v = 0; v < g.num_nodes(); ++v) {
    os << "  n" << v << " [label=\"" << v << ": " << dot_escape(kind_name(g, v, vocab)) << "\"];\n";
  }
  static constexpr const char* kColor[] = {"black", "blue", "darkgreen"};
  for (auto set : graphio::kAllEdgeSets) {
    const auto& edges = g.edge_set(set);
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
      os << "  n" << edges[idx].first << " -> n" << edges[idx].second
         << " [color=" << kColor[static_cast<std::size_t>(set)];
      auto r = rank_of.find({set, idx});
      auto p = pos_of.find({set, idx});
      if (r != rank_of.end()) {
        os << ", style=bold, penwidth=3, label=\"#" << r->second << " " << fmt(mask.scores[p->second]) << "\"";
      } else {
        // unmasked edges (set not explained) are dashed
        os << ", style=" << (p == pos_of.end() ? "dashed" : "solid") << ", penwidth=0.5, arrowhead=onormal";
      }
      os << ", tooltip=\"" << graphio::edge_set_name(set) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace vsel::explain
