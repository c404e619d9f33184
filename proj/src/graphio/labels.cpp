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

#include "vsel/graphio/labels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "vsel/error.hpp"

namespace vsel::graphio {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_real(const std::string& s, const std::string& where) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw SchemaError(where + ": expected a real number, found '" + s + "'");
  }
  return v;
}

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string format_real(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kCorrect: return "correct";
    case Outcome::kIncorrect: return "incorrect";
    case Outcome::kUnknown: return "unknown";
  }
  return "unknown";
}

double compute_label(const VerifierLabelRecord& record, double time_limit, double penalty_weight) {
  if (!(time_limit > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "time_limit must be positive");
  }
  double t = std::min(std::max(record.cpu_seconds, 0.0), time_limit);
  return record.svcomp_score - penalty_weight * t / time_limit;
}

double resolve_label(const VerifierLabelRecord& record, const LabelPenalty& penalty) {
  if (record.label) return *record.label;
  return compute_label(record, penalty.time_limit, penalty.penalty_weight);
}

std::vector<VerifierLabelRecord> parse_labels_csv(std::string_view text) {
  std::vector<VerifierLabelRecord> out;
  std::set<std::tuple<std::string, PropertyKind, std::string>> seen;
  std::size_t start = 0;
  std::size_t line_no = 0;
  bool has_label_column = false;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (line_no == 1) {
      const std::vector<std::string> expected = {"program_id",   "property",    "verifier",
                                                 "svcomp_score", "cpu_seconds", "outcome"};
      bool ok = f.size() >= 6 && std::equal(expected.begin(), expected.end(), f.begin());
      has_label_column = f.size() == 7 && f[6] == "label";
      if (!ok || (f.size() == 7 && !has_label_column) || f.size() > 7) {
        throw SchemaError("labels: header must be "
                          "program_id,property,verifier,svcomp_score,cpu_seconds,outcome[,label]");
      }
      continue;
    }
    const std::string where = "labels line " + std::to_string(line_no);
    if (f.size() != (has_label_column ? 7u : 6u)) throw SchemaError(where + ": wrong field count");
    VerifierLabelRecord r;
    r.program_id = f[0];
    auto prop = parse_property(f[1]);
    if (!prop) throw SchemaError(where + ": property: unknown '" + f[1] + "'");
    r.property = *prop;
    r.verifier = f[2];
    if (r.program_id.empty() || r.verifier.empty()) {
      throw SchemaError(where + ": program_id and verifier must be nonempty");
    }
    r.svcomp_score = parse_real(f[3], where + ": svcomp_score");
    r.cpu_seconds = parse_real(f[4], where + ": cpu_seconds");
    if (r.cpu_seconds < 0) throw SchemaError(where + ": cpu_seconds must be >= 0");
    if (f[5] == "correct") {
      r.outcome = Outcome::kCorrect;
    } else if (f[5] == "incorrect") {
      r.outcome = Outcome::kIncorrect;
    } else if (f[5] == "unknown") {
      r.outcome = Outcome::kUnknown;
    } else {
      throw SchemaError(where + ": outcome: expected correct|incorrect|unknown");
    }
    if (has_label_column && !f[6].empty()) r.label = parse_real(f[6], where + ": label");
    if (!seen.emplace(r.program_id, r.property, r.verifier).second) {
      throw SchemaError(where + ": duplicate (program_id, property, verifier)");
    }
    out.push_back(std::move(r));
  }
  if (line_no == 0) throw SchemaError("labels: empty file");
  return out;
}

std::vector<VerifierLabelRecord> load_labels_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open labels '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_labels_csv(ss.str());
}

std::string write_labels_csv(std::span<const VerifierLabelRecord> records) {
  bool with_label = std::any_of(records.begin(), records.end(),
                                [](const VerifierLabelRecord& r) { return r.label.has_value(); });
  std::string out = "program_id,property,verifier,svcomp_score,cpu_seconds,outcome";
  out += with_label ? ",label\n" : "\n";
  for (const auto& r : records) {
    out += quote_field(r.program_id) + "," + std::string(property_name(r.property)) + "," +
           quote_field(r.verifier) + "," +
           format_real(r.svcomp_score) + "," + format_real(r.cpu_seconds) + "," +
           std::string(outcome_name(r.outcome));
    if (with_label) out += "," + (r.label ? format_real(*r.label) : std::string());
    out += "\n";
  }
  return out;
}

std::vector<LabeledInstance> assemble_instances(std::vector<ProgramGraph> graphs,
                                                std::span<const VerifierLabelRecord> records,
                                                std::span<const std::string> portfolio,
                                                const LabelPenalty& penalty) {
  if (portfolio.empty()) throw Error(ErrorCode::kConfig, "portfolio must be nonempty");
  std::map<std::string, std::size_t> verifier_index;
  for (std::size_t i = 0; i < portfolio.size(); ++i) verifier_index.emplace(portfolio[i], i);
  std::map<std::pair<std::string, PropertyKind>, std::vector<const VerifierLabelRecord*>> by_key;
  for (const auto& r : records) by_key[{r.program_id, r.property}].push_back(&r);

  std::vector<LabeledInstance> out;
  out.reserve(graphs.size());
  for (auto& g : graphs) {
    LabeledInstance inst;
    inst.labels.assign(portfolio.size(), 0.0);
    inst.solved.assign(portfolio.size(), false);
    std::vector<bool> have(portfolio.size(), false);
    auto it = by_key.find({g.id, g.property});
    if (it != by_key.end()) {
      for (const auto* r : it->second) {
        auto v = verifier_index.find(r->verifier);
        if (v == verifier_index.end()) continue;  // verifier outside the portfolio
        inst.labels[v->second] = resolve_label(*r, penalty);
        inst.solved[v->second] = r->outcome == Outcome::kCorrect;
        have[v->second] = true;
      }
    }
    for (std::size_t i = 0; i < portfolio.size(); ++i) {
      if (!have[i]) {
        throw SchemaError("labels: no row for verifier '" + portfolio[i] + "' on program '" + g.id +
                          "' (" + std::string(property_name(g.property)) + ")");
      }
    }
    inst.graph = std::move(g);
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace vsel::graphio
