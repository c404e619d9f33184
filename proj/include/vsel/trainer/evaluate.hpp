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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vsel/graphio/labels.hpp"
#include "vsel/model/model.hpp"

namespace vsel::trainer {

/// Static selectors fitted on a training set.
struct Baselines {
  std::size_t iss_success = 0;             // most correct outcomes
  std::vector<std::size_t> iss_rank;       // Borda ordering of the label ranks
  std::vector<std::size_t> iss_topk;       // by how often each verifier was best
};
/// Throws EmptySplit on an empty set.
Baselines fit_baselines(std::span<const graphio::LabeledInstance> train_set);

/// ISS_success as a full ordering: the chosen verifier first, the rest by
/// index.
std::vector<std::size_t> success_ordering(std::size_t chosen, std::size_t k);

struct MetricBlock {
  std::size_t instances = 0;
  std::optional<double> success_accuracy;  // empty when nothing is eligible
  std::size_t success_eligible = 0;
  std::size_t excluded_none_solved = 0;
  std::size_t excluded_all_solved = 0;
  double spearman_mean = 0.0;
  std::size_t spearman_degenerate = 0;
  std::map<std::size_t, double> topk_error;  // K -> rate, K = 1..k
};

struct EvalReport {
  MetricBlock overall;
  std::map<std::string, MetricBlock> per_property;  // keyed by property name
};

/// Metrics for one selector. predicted[i] is the score vector for
/// instances[i]; ordering follows model::order_by_score.
EvalReport evaluate(std::span<const std::vector<double>> predicted,
                    std::span<const graphio::LabeledInstance> instances);

/// Model scores for every instance; `jobs` worker threads (0 = hardware).
std::vector<std::vector<double>> predict_all(std::span<const graphio::LabeledInstance> instances,
                                             const model::ModelParameters& params, std::size_t jobs = 1);

/// Reports for the model and the four baselines, in that order:
/// model, ISS_success, ISS_rank, ISS_topk, Random.
std::vector<std::pair<std::string, EvalReport>> evaluate_with_baselines(
    std::span<const std::vector<double>> model_scores,
    std::span<const graphio::LabeledInstance> train_set,
    std::span<const graphio::LabeledInstance> test_set, std::uint64_t random_seed);

nlohmann::json to_json(const MetricBlock& m);
nlohmann::json to_json(const EvalReport& r);
/// {"selectors": {name: report, ...}}
nlohmann::json to_json(std::span<const std::pair<std::string, EvalReport>> reports);

/// Aligned text table, one column per selector; per-property sections
/// follow the overall one.
std::string format_table(std::span<const std::pair<std::string, EvalReport>> reports);

}  // namespace vsel::trainer
