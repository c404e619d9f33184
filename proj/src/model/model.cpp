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

#include "vsel/model/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vsel/error.hpp"
#include "vsel/random.hpp"

namespace vsel::model {

std::vector<std::size_t> ModelConfig::effective_head_hidden() const {
  if (!head_hidden.empty()) return head_hidden;
  return {vocab_size, std::max<std::size_t>(1, vocab_size / 2)};
}

std::size_t ModelConfig::node_state_width() const {
  if (!jumping_knowledge) return num_gat_layers == 0 ? vocab_size : effective_gat_width();
  return vocab_size + num_gat_layers * effective_gat_width();
}

void ModelConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kConfig, "model: " + m); };
  if (vocab_size == 0) fail("vocab_size must be positive");
  if (portfolio_size == 0) fail("portfolio must be nonempty");
  if (num_gat_layers > kMaxGatLayers) fail("num_gat_layers must be in 0..5");
  if (pool_hidden.empty()) fail("pool_hidden must list at least one width");
  for (std::size_t w : pool_hidden)
    if (w == 0) fail("pool widths must be positive");
  for (std::size_t w : head_hidden)
    if (w == 0) fail("head widths must be positive");
  if (!(leaky_slope >= 0.0 && leaky_slope < 1.0)) fail("leaky_slope must be in [0, 1)");
}

std::vector<std::pair<std::string, Tensor>> ModelParameters::named_tensors() const {
  std::vector<std::pair<std::string, Tensor>> out;
  for (std::size_t i = 0; i < gat.size(); ++i) {
    const std::string p = "gat." + std::to_string(i) + ".";
    out.emplace_back(p + "w_in", gat[i].w_in);
    out.emplace_back(p + "w_out", gat[i].w_out);
    out.emplace_back(p + "attn", gat[i].attn);
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const std::string p = "pool." + std::to_string(i) + ".";
    out.emplace_back(p + "weight", pool[i].weight);
    out.emplace_back(p + "bias", pool[i].bias);
  }
  for (std::size_t i = 0; i < head.size(); ++i) {
    const std::string p = "head." + std::to_string(i) + ".";
    out.emplace_back(p + "weight", head[i].weight);
    out.emplace_back(p + "bias", head[i].bias);
  }
  return out;
}

std::vector<Tensor> ModelParameters::tensors() const {
  std::vector<Tensor> out;
  for (auto& [_, t] : named_tensors()) out.push_back(t);
  return out;
}

ModelParameters ModelParameters::clone() const {
  ModelParameters c = *this;
  auto dup = [](Tensor& t) { t = Tensor::parameter(t.value()); };
  for (auto& l : c.gat) {
    dup(l.w_in);
    dup(l.w_out);
    dup(l.attn);
  }
  for (auto& l : c.pool) {
    dup(l.weight);
    dup(l.bias);
  }
  for (auto& l : c.head) {
    dup(l.weight);
    dup(l.bias);
  }
  return c;
}

void ModelParameters::assign_values(const ModelParameters& other) {
  auto mine = named_tensors();
  auto theirs = other.named_tensors();
  if (mine.size() != theirs.size()) throw ShapeError("assign_values: architecture mismatch");
  for (std::size_t i = 0; i < mine.size(); ++i) {
    if (mine[i].first != theirs[i].first ||
        mine[i].second.value().shape_string() != theirs[i].second.value().shape_string()) {
      throw ShapeError("assign_values: mismatch at " + mine[i].first);
    }
    mine[i].second.mutable_value() = theirs[i].second.value();
  }
}

namespace {

Tensor uniform_param(Rng& rng, std::size_t rows, std::size_t cols, std::size_t fan_in) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.uniform(-bound, bound);
  return Tensor::parameter(std::move(m));
}

std::vector<DenseLayer> dense_stack(Rng& rng, std::size_t in, const std::vector<std::size_t>& widths) {
  std::vector<DenseLayer> out;
  for (std::size_t w : widths) {
    DenseLayer l;
    l.weight = uniform_param(rng, w, in, in);
    l.bias = uniform_param(rng, 1, w, in);
    out.push_back(std::move(l));
    in = w;
  }
  return out;
}

Tensor dense(Tape& tape, const Tensor& x, const DenseLayer& l) {
  return tape.add(tape.matmul(x, tape.transpose(l.weight)), l.bias);
}

Tensor dense_stack_forward(Tape& tape, Tensor x, std::span<const DenseLayer> layers, double slope) {
  for (std::size_t i = 0; i < layers.size(); ++i) {
    x = dense(tape, x, layers[i]);
    if (i + 1 < layers.size()) x = tape.leaky_relu(x, slope);
  }
  return x;
}

}  // namespace

ModelParameters init_parameters(const ModelConfig& config, std::vector<std::string> portfolio,
                                std::string vocab_fingerprint, std::uint64_t seed) {
  config.validate();
  if (portfolio.size() != config.portfolio_size) {
    throw Error(ErrorCode::kConfig, "portfolio has " + std::to_string(portfolio.size()) +
                                        " names, config expects " +
                                        std::to_string(config.portfolio_size));
  }
  Rng rng(seed);
  ModelParameters p;
  p.config = config;
  p.portfolio = std::move(portfolio);
  p.vocab_fingerprint = std::move(vocab_fingerprint);
  std::size_t d_in = config.vocab_size;
  const std::size_t d = config.effective_gat_width();
  for (std::size_t i = 0; i < config.num_gat_layers; ++i) {
    GatLayerParams l;
    l.w_in = uniform_param(rng, d, d_in, d_in);
    l.w_out = uniform_param(rng, d, d_in, d_in);
    l.attn = uniform_param(rng, 2 * d, 1, 2 * d);
    p.gat.push_back(std::move(l));
    d_in = d;
  }
  std::vector<std::size_t> pool_widths = config.pool_hidden;
  pool_widths.push_back(1);
  p.pool = dense_stack(rng, config.node_state_width(), pool_widths);
  std::vector<std::size_t> head_widths = config.effective_head_hidden();
  head_widths.push_back(config.portfolio_size);
  p.head = dense_stack(rng, config.node_state_width() + config.property_width(), head_widths);
  return p;
}

MessageEdges message_edges(const graphio::ProgramGraph& g,
                           const std::array<bool, graphio::kEdgeSetCount>& edge_sets) {
  MessageEdges m;
  for (auto es : graphio::kAllEdgeSets) {
    if (!edge_sets[static_cast<std::size_t>(es)]) continue;
    const auto& list = g.edge_set(es);
    for (std::size_t k = 0; k < list.size(); ++k) {
      m.src.push_back(list[k].first);
      m.dst.push_back(list[k].second);
      m.origin.emplace_back(es, k);
    }
  }
  m.num_maskable = m.src.size();
  for (std::uint32_t i = 0; i < g.num_nodes(); ++i) {
    m.src.push_back(i);
    m.dst.push_back(i);
  }
  return m;
}

Matrix onehot_matrix(const graphio::ProgramGraph& g, std::size_t vocab_size) {
  Matrix x(g.num_nodes(), vocab_size);
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    const std::uint32_t k = g.node_kinds[i];
    if (k >= vocab_size) {
      throw Error(ErrorCode::kVocabMismatch, "graph '" + g.id + "': node kind " +
                                                 std::to_string(k) + " outside vocabulary of size " +
                                                 std::to_string(vocab_size));
    }
    x(i, k) = 1.0;
  }
  return x;
}

Tensor gat_layer(Tape& tape, const Tensor& states, const MessageEdges& edges,
                 const GatLayerParams& params, double slope, const Tensor* edge_mask) {
  const std::size_t n = states.rows();
  if (params.w_in.cols() != states.cols() || params.w_out.cols() != states.cols() ||
      params.attn.rows() != 2 * params.w_out.rows() || params.w_in.rows() != params.w_out.rows()) {
    throw ShapeError("gat_layer: states " + states.value().shape_string() + " vs W_in " +
                     params.w_in.value().shape_string() + ", W_out " +
                     params.w_out.value().shape_string() + ", attn " +
                     params.attn.value().shape_string());
  }
  Tensor recv = tape.matmul(states, tape.transpose(params.w_in));
  Tensor send = tape.matmul(states, tape.transpose(params.w_out));
  Tensor send_e = tape.gather_rows(send, edges.src);
  Tensor pair[] = {tape.gather_rows(recv, edges.dst), send_e};
  Tensor scores = tape.leaky_relu(tape.matmul(tape.concat_cols(pair), params.attn), slope);
  Tensor alpha = tape.segment_softmax(scores, edges.dst, n);
  if (edge_mask) {
    if (edge_mask->rows() != edges.num_maskable || edge_mask->cols() != 1) {
      throw ShapeError("gat_layer: edge mask " + edge_mask->value().shape_string() + " for " +
                       std::to_string(edges.num_maskable) + " maskable edges");
    }
    Tensor ones = Tensor::constant(Matrix(edges.src.size() - edges.num_maskable, 1, 1.0));
    Tensor full[] = {*edge_mask, ones};
    alpha = edges.num_maskable ? tape.elementwise_mul(alpha, tape.concat_rows(full)) : alpha;
  }
  return tape.scatter_add_rows(tape.elementwise_mul(send_e, alpha), edges.dst, n);
}

Tensor jumping_knowledge(Tape& tape, std::span<const Tensor> layer_outputs, bool enabled) {
  if (layer_outputs.empty()) throw ShapeError("jumping_knowledge: no layer outputs");
  if (!enabled || layer_outputs.size() == 1) {
    for (const auto& t : layer_outputs) {
      if (t.rows() != layer_outputs[0].rows()) {
        throw ShapeError("jumping_knowledge: node counts " + std::to_string(t.rows()) + " and " +
                         std::to_string(layer_outputs[0].rows()));
      }
    }
    return layer_outputs.back();
  }
  return tape.concat_cols(layer_outputs);
}

PoolOutput attention_pool(Tape& tape, const Tensor& states, std::span<const DenseLayer> pool,
                          double slope) {
  if (states.rows() == 0) throw Error(ErrorCode::kEmptyGraph, "attention_pool: graph has no nodes");
  Tensor s = dense_stack_forward(tape, states, pool, slope);  // N x 1
  if (s.cols() != 1) throw ShapeError("attention_pool: scorer output " + s.value().shape_string());
  Tensor w = tape.transpose(tape.softmax_rows(tape.transpose(s)));
  return {tape.sum_rows(tape.elementwise_mul(states, w)), w};
}

Tensor forward(Tape& tape, const graphio::ProgramGraph& g, const ModelParameters& params,
               const Tensor* edge_mask) {
  const ModelConfig& cfg = params.config;
  if (g.num_nodes() == 0) throw Error(ErrorCode::kEmptyGraph, "graph '" + g.id + "' has no nodes");
  if (!g.vocab_fingerprint.empty() && !params.vocab_fingerprint.empty() &&
      g.vocab_fingerprint != params.vocab_fingerprint) {
    throw Error(ErrorCode::kVocabMismatch, "graph '" + g.id + "' was extracted with vocabulary " +
                                               g.vocab_fingerprint + ", model expects " +
                                               params.vocab_fingerprint);
  }
  MessageEdges edges = message_edges(g, cfg.edge_sets);
  std::vector<Tensor> layers = {Tensor::constant(onehot_matrix(g, cfg.vocab_size))};
  for (const auto& l : params.gat) {
    layers.push_back(gat_layer(tape, layers.back(), edges, l, cfg.leaky_slope, edge_mask));
  }
  Tensor h = jumping_knowledge(tape, layers, cfg.jumping_knowledge);
  Tensor hg = attention_pool(tape, h, params.pool, cfg.leaky_slope).graph_vector;
  Matrix prop(1, cfg.property_width());
  if (cfg.property_encoding == PropertyEncoding::kScalar) {
    prop(0, 0) = static_cast<double>(graphio::encode(g.property));
  } else {
    prop(0, graphio::encode(g.property)) = 1.0;
  }
  Tensor parts[] = {hg, Tensor::constant(std::move(prop))};
  return dense_stack_forward(tape, tape.concat_cols(parts), params.head, cfg.leaky_slope);
}

std::vector<std::size_t> order_by_score(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

RankingResult predict(const graphio::ProgramGraph& g, const ModelParameters& params) {
  Tape tape(false);
  Tensor s = forward(tape, g, params);
  RankingResult r;
  r.scores.assign(s.value().values().begin(), s.value().values().end());
  r.ordering = order_by_score(r.scores);
  return r;
}

namespace {

void check_lengths(std::size_t scores, std::size_t labels) {
  if (scores != labels || scores < 2) {
    throw Error(ErrorCode::kLengthMismatch, "margin_rank_loss: " + std::to_string(scores) +
                                                " scores vs " + std::to_string(labels) +
                                                " labels (need equal lengths >= 2)");
  }
}

}  // namespace

Tensor margin_rank_loss(Tape& tape, const Tensor& scores, std::span<const double> labels,
                        double margin) {
  if (scores.rows() != 1) throw ShapeError("margin_rank_loss: scores " + scores.value().shape_string());
  const std::size_t n = scores.cols();
  check_lengths(n, labels.size());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (labels[a] > labels[b]) pairs.emplace_back(a, b);
  if (pairs.empty()) return Tensor::constant(Matrix(1, 1, 0.0));
  // Pair-difference operator: column p holds +1 at a and -1 at b.
  Matrix d(n, pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    d(pairs[p].first, p) = 1.0;
    d(pairs[p].second, p) = -1.0;
  }
  Tensor diff = tape.matmul(scores, Tensor::constant(std::move(d)));  // 1 x P
  Tensor hinge = tape.leaky_relu(tape.add_scalar(tape.scalar_mul(diff, -1.0), margin), 0.0);
  return tape.scalar_mul(tape.sum_all(hinge), 1.0 / static_cast<double>(pairs.size()));
}

double margin_rank_loss(std::span<const double> scores, std::span<const double> labels,
                        double margin) {
  Tape tape(false);
  return margin_rank_loss(tape, Tensor::constant(Matrix::row(scores)), labels, margin).item();
}

}  // namespace vsel::model
