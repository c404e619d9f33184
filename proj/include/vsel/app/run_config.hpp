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
#include <string>
#include <vector>

#include "json.hpp"
#include "vsel/explain/explain.hpp"
#include "vsel/graphio/labels.hpp"
#include "vsel/graphio/split.hpp"
#include "vsel/model/model.hpp"
#include "vsel/trainer/train.hpp"

namespace vsel::app {

inline constexpr const char* kEnvPrefix = "GRAVES_";

// One structured document for a whole run. Paths are resolved against
// base_dir when relative. vocab_size and portfolio_size inside `model` are
// filled from the vocabulary file and the portfolio.
struct RunConfig {
  std::string vocabulary;
  std::vector<std::string> portfolio;
  std::string graphs;  // directory of graph JSON files
  std::string labels;  // labels CSV
  model::ModelConfig model;
  trainer::TrainConfig train;
  graphio::SplitRatios split;
  std::uint64_t split_seed = 0;
  graphio::LabelPenalty penalty;
  explain::ExplainConfig explain;
  std::size_t jobs = 1;
};

/// GRAVES_A__B=v sets j["a"]["b"]. Values parse as JSON when they can,
/// otherwise they are taken as strings.
void apply_env_overrides(nlohmann::json& j, const std::map<std::string, std::string>& env);

/// The process environment, filtered to the GRAVES_ prefix.
std::map<std::string, std::string> prefixed_environment();

/// Throws Error(kConfig) on unknown keys, bad values, an empty portfolio or,
/// with check_paths, a referenced path that does not exist.
RunConfig parse_run_config(const nlohmann::json& j, const std::string& base_dir, bool check_paths = true);

/// Reads the file, applies environment overrides, parses.
RunConfig load_run_config(const std::string& path);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace vsel::app
