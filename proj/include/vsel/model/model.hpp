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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vsel/graphio/program_graph.hpp"
#include "vsel/tensor/tensor.hpp"

namespace vsel::model {

using tensor::Matrix;
using tensor::Tape;
using tensor::Tensor;

inline constexpr std::size_t kMaxGatLayers = 5;

enum class PropertyEncoding : std::uint8_t { kScalar, kOneHot };

struct ModelConfig {
  std::size_t vocab_size = 0;      // |T|
  std::size_t portfolio_size = 0;  // k
  std::size_t num_gat_layers = 2;  // 0..5
  std::array<bool, graphio::kEdgeSetCount> edge_sets = {true, true, true};
  bool jumping_knowledge = true;
  std::size_t gat_width = 0;                    // 0: same as vocab_size
  std::vector<std::size_t> pool_hidden = {64, 12};
  std::vector<std::size_t> head_hidden;         // empty: {|T|, |T|/2}
  double leaky_slope = 0.2;
  PropertyEncoding property_encoding = PropertyEncoding::kScalar;

  std::size_t effective_gat_width() const { return gat_width ? gat_width : vocab_size; }
  std::vector<std::size_t> effective_head_hidden() const;
  /// Width of the jumping-knowledge output (pool input).
  std::size_t node_state_width() const;
  std::size_t property_width() const {
    return property_encoding == PropertyEncoding::kScalar ? 1 : graphio::kPropertyCount;
  }
  /// Throws Error(kConfig) on out-of-range values.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Shapes follow the math: W is (d_out x d_in) and is applied to row
/// states as H W^T.
struct GatLayerParams {
  Tensor w_in;   // receiver transform, feeds attention only
  Tensor w_out;  // sender transform, carries the message
  Tensor attn;   // (2 d_out) x 1, receiver half first
};

struct DenseLayer {
  Tensor weight;  // out x in
  Tensor bias;    // 1 x out
};

struct ModelParameters {
  ModelConfig config;
  std::vector<std::string> portfolio;
  std::string vocab_fingerprint;
  std::vector<GatLayerParams> gat;
  std::vector<DenseLayer> pool;  // last layer has width 1
  std::vector<DenseLayer> head;  // last layer has width k

  /// Every trainable tensor with a stable dotted name ("gat.0.w_in", ...).
  std::vector<std::pair<std::string, Tensor>> named_tensors() const;
  std::vector<Tensor> tensors() const;
  /// Deep copy: fresh storage, same values.
  ModelParameters clone() const;
  /// Copies values from other (same architecture) into this storage.
  void assign_values(const ModelParameters& other);
};

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for every weight and bias.
ModelParameters init_parameters(const ModelConfig& config, std::vector<std::string> portfolio,
                                std::string vocab_fingerprint, std::uint64_t seed);

/// Message list of one graph: enabled edge sets in AST, ICFG, DFG order
/// (duplicates across sets stay separate), then one self-loop per node.
struct MessageEdges {
  std::vector<std::uint32_t> src;
  std::vector<std::uint32_t> dst;
  std::vector<std::pair<graphio::EdgeSet, std::size_t>> origin;  // maskable prefix only
  std::size_t num_maskable = 0;  // self-loops are never masked
};
MessageEdges message_edges(const graphio::ProgramGraph& g,
                           const std::array<bool, graphio::kEdgeSetCount>& edge_sets);

/// N x |T| one-hot rows; kind indices >= |T| raise VocabMismatch.
Matrix onehot_matrix(const graphio::ProgramGraph& g, std::size_t vocab_size);

/// One GAT layer. edge_mask, when given, is a num_maskable x 1 column that
/// scales the attention weight of each maskable message.
Tensor gat_layer(Tape& tape, const Tensor& states, const MessageEdges& edges,
                 const GatLayerParams& params, double slope, const Tensor* edge_mask = nullptr);

/// Column concatenation in list order; with enabled = false, the last entry.
Tensor jumping_knowledge(Tape& tape, std::span<const Tensor> layer_outputs, bool enabled);

struct PoolOutput {
  Tensor graph_vector;  // 1 x d
  Tensor weights;       // N x 1, softmax over nodes
};
/// Throws EmptyGraph when states has no rows.
PoolOutput attention_pool(Tape& tape, const Tensor& states, std::span<const DenseLayer> pool,
                          double slope);

/// Full forward pass to the 1 x k score row.
Tensor forward(Tape& tape, const graphio::ProgramGraph& g, const ModelParameters& params,
               const Tensor* edge_mask = nullptr);

struct RankingResult {
  std::vector<double> scores;
  std::vector<std::size_t> ordering;  // descending score, ties by index
};

/// Indices by descending value, ties by ascending index.
std::vector<std::size_t> order_by_score(std::span<const double> scores);

/// Inference. Throws VocabMismatch when the graph carries a different
/// vocabulary fingerprint or an out-of-range kind; EmptyGraph on 0 nodes.
RankingResult predict(const graphio::ProgramGraph& g, const ModelParameters& params);

/// Mean over ordered pairs with labels[a] > labels[b] of
/// max(0, margin - (s_a - s_b)); 0 when no such pair. scores is 1 x n.
Tensor margin_rank_loss(Tape& tape, const Tensor& scores, std::span<const double> labels,
                        double margin);
double margin_rank_loss(std::span<const double> scores, std::span<const double> labels,
                        double margin);

}  // namespace vsel::model
