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

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vsel/app/run_config.hpp"
#include "vsel/graphio/labels.hpp"
#include "vsel/graphio/split.hpp"
#include "vsel/graphio/vocabulary.hpp"
#include "vsel/model/model.hpp"
#include "vsel/trainer/evaluate.hpp"
#include "vsel/trainer/train.hpp"

namespace vsel::app {

/// Every *.json file of a directory, in file-name order.
std::vector<graphio::ProgramGraph> load_graph_dir(const std::string& dir);

struct Dataset {
  std::vector<graphio::LabeledInstance> instances;
  graphio::DatasetSplit split;

  std::vector<graphio::LabeledInstance> subset(const std::vector<std::size_t>& idx) const;
};

/// Graphs joined with labels, then split by property with the config's
/// ratios and seed. Needs `graphs` and `labels` set.
Dataset load_dataset(const RunConfig& cfg);

nlohmann::json history_to_json(const trainer::TrainHistory& h);

struct TrainRun {
  model::ModelParameters params;
  trainer::TrainHistory history;
  nlohmann::json summary;  // history plus split sizes
};

/// Initializes from train.seed and trains on the train/val splits.
TrainRun run_train(const RunConfig& cfg, const trainer::EpochCallback& on_epoch = {});

struct EvaluateRun {
  std::vector<std::pair<std::string, trainer::EvalReport>> reports;
  nlohmann::json json;
  std::string table;
};

/// subset "test" scores the test split with baselines fitted on the train
/// split; "all" uses every instance for both. ks restricts the Top-K rows
/// (empty: 1..k); a K outside 1..k is BadK.
EvaluateRun run_evaluate(const model::ModelParameters& params, const RunConfig& cfg,
                         const std::string& subset, const std::vector<std::size_t>& ks);

/// Count, max/mean nodes and edges, overall and per property.
nlohmann::json graph_stats(std::span<const graphio::ProgramGraph> graphs);

/// Extracts every .c/.i input (directories are scanned, not recursively)
/// into out_dir/<stem>.json. Failures become diagnostics; the summary holds
/// "written", "failed", "diagnostics" and "stats".
nlohmann::json extract_corpus(const std::vector<std::string>& inputs, const std::string& out_dir,
                              const graphio::TokenVocabulary& vocab, graphio::PropertyKind property,
                              std::size_t node_cap, std::size_t jobs);

}  // namespace vsel::app
