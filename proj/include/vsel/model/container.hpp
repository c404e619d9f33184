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

#include "json.hpp"
#include "vsel/model/model.hpp"

namespace vsel::model {

// Container layout (all integers little-endian):
//   "VSELMODL"  u32 version  u32 header_len  header JSON
//   u32 block_count, then per block:
//     u32 name_len  name  u32 rows  u32 cols  rows*cols f64
// Header JSON: {"config":{...},"portfolio":[...],"vocab_fingerprint":"..."}.
inline constexpr std::uint32_t kContainerVersion = 1;

std::string serialize_model(const ModelParameters& params);
/// Throws SchemaError on bad magic, unknown version, truncation, or blocks
/// that do not match the architecture described by the header.
ModelParameters deserialize_model(const std::string& bytes);

void save_model(const ModelParameters& params, const std::string& path);
ModelParameters load_model(const std::string& path);

nlohmann::json model_config_to_json(const ModelConfig& config);
/// Missing keys keep their defaults; unknown keys are a Config error.
ModelConfig model_config_from_json(const nlohmann::json& j, ModelConfig base = {});

}  // namespace vsel::model
