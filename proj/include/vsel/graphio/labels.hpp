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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsel/graphio/program_graph.hpp"

namespace vsel::graphio {

enum class Outcome : std::uint8_t { kCorrect, kIncorrect, kUnknown };

std::string_view outcome_name(Outcome o);

/// One row of the labels CSV.
struct VerifierLabelRecord {
  std::string program_id;
  PropertyKind property = PropertyKind::kReachSafety;
  std::string verifier;
  double svcomp_score = 0.0;
  double cpu_seconds = 0.0;
  Outcome outcome = Outcome::kUnknown;
  std::optional<double> label;  // precomputed label column, bypasses the penalty
};

struct LabelPenalty {
  double time_limit = 900.0;  // seconds
  double penalty_weight = 1.0;
};

/// score - weight * min(cpu, limit) / limit. Ignores record.label.
double compute_label(const VerifierLabelRecord& record, double time_limit, double penalty_weight);

/// record.label when present, otherwise compute_label.
double resolve_label(const VerifierLabelRecord& record, const LabelPenalty& penalty);

// Header: program_id,property,verifier,svcomp_score,cpu_seconds,outcome[,label]
std::vector<VerifierLabelRecord> parse_labels_csv(std::string_view text);
std::vector<VerifierLabelRecord> load_labels_csv(const std::string& path);
std::string write_labels_csv(std::span<const VerifierLabelRecord> records);

/// A graph plus one label per portfolio verifier (portfolio order).
struct LabeledInstance {
  ProgramGraph graph;
  std::vector<double> labels;
  std::vector<bool> solved;  // outcome == correct, per verifier
};

/// Joins graphs with label rows on (program id, property). A graph missing a
/// row for any portfolio verifier is a SchemaError.
std::vector<LabeledInstance> assemble_instances(std::vector<ProgramGraph> graphs,
                                                std::span<const VerifierLabelRecord> records,
                                                std::span<const std::string> portfolio,
                                                const LabelPenalty& penalty);

}  // namespace vsel::graphio
