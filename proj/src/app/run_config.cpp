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

#include "vsel/app/run_config.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vsel/error.hpp"
#include "vsel/graphio/vocabulary.hpp"
#include "vsel/model/container.hpp"

extern char** environ;

namespace vsel::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::kConfig, "config: " + what); }

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) config_error(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* allowed : keys) ok |= k == allowed;
    if (!ok) config_error("unknown key '" + where + (where.empty() ? "" : ".") + k + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    config_error("bad value for '" + where + "." + key + "'");
  }
}

std::string resolve(const std::string& p, const std::string& base) {
  if (p.empty() || fs::path(p).is_absolute() || base.empty()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

std::array<bool, graphio::kEdgeSetCount> edge_sets_from(const json& j, const std::string& where) {
  std::array<bool, graphio::kEdgeSetCount> out = {false, false, false};
  if (!j.is_array()) config_error(where + " must be a list of edge set names");
  for (const auto& e : j) {
    auto s = e.is_string() ? graphio::parse_edge_set(e.get<std::string>()) : std::nullopt;
    if (!s) config_error(where + ": unknown edge set " + e.dump());
    out[static_cast<std::size_t>(*s)] = true;
  }
  return out;
}

json edge_sets_to(const std::array<bool, graphio::kEdgeSetCount>& sets) {
  json a = json::array();
  for (auto s : graphio::kAllEdgeSets)
    if (sets[static_cast<std::size_t>(s)]) a.push_back(std::string(graphio::edge_set_name(s)));
  return a;
}

}  // namespace

void apply_env_overrides(json& j, const std::map<std::string, std::string>& env) {
  const std::string prefix = kEnvPrefix;
  for (const auto& [name, value] : env) {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) continue;
    std::string rest = name.substr(prefix.size());
    for (char& c : rest) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    json* node = &j;
    std::size_t pos = 0;
    while (true) {
      const std::size_t cut = rest.find("__", pos);
      const std::string key = rest.substr(pos, cut == std::string::npos ? std::string::npos : cut - pos);
      if (key.empty()) config_error("malformed override " + name);
      if (!node->is_object()) *node = json::object();
      if (cut == std::string::npos) {
        json parsed = json::parse(value, nullptr, false);
        (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
        break;
      }
      node = &(*node)[key];
      pos = cut + 2;
    }
  }
}

std::map<std::string, std::string> prefixed_environment() {
  std::map<std::string, std::string> env;
  for (char** e = environ; e && *e; ++e) {
    std::string s(*e);
    const auto eq = s.find('=');
    if (eq != std::string::npos && s.rfind(kEnvPrefix, 0) == 0) env[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return env;
}

RunConfig parse_run_config(const json& j, const std::string& base_dir, bool check_paths) {
  reject_unknown(j, "", {"vocabulary", "portfolio", "graphs", "labels", "model", "train", "split", "penalty",
                         "explain", "jobs"});
  RunConfig c;
  read(j, "vocabulary", c.vocabulary, "");
  read(j, "portfolio", c.portfolio, "");
  read(j, "graphs", c.graphs, "");
  read(j, "labels", c.labels, "");
  read(j, "jobs", c.jobs, "");
  if (c.portfolio.empty()) config_error("portfolio must be nonempty");
  c.vocabulary = resolve(c.vocabulary, base_dir);
  c.graphs = resolve(c.graphs, base_dir);
  c.labels = resolve(c.labels, base_dir);
  if (check_paths) {
    for (const std::string* p : {&c.vocabulary, &c.graphs, &c.labels}) {
      if (!p->empty() && !fs::exists(*p)) config_error("path does not exist: " + *p);
    }
  }

  if (j.contains("model")) c.model = model::model_config_from_json(j.at("model"));
  c.model.portfolio_size = c.portfolio.size();
  if (!c.vocabulary.empty() && fs::exists(c.vocabulary)) {
    c.model.vocab_size = graphio::TokenVocabulary::load(c.vocabulary).size();
  }

  if (j.contains("train")) {
    const json& t = j.at("train");
    reject_unknown(t, "train", {"epochs", "initial_lr", "patience", "decay", "min_lr", "margin", "seed"});
    read(t, "epochs", c.train.epochs, "train");
    read(t, "initial_lr", c.train.initial_lr, "train");
    read(t, "patience", c.train.patience, "train");
    read(t, "decay", c.train.decay, "train");
    read(t, "min_lr", c.train.min_lr, "train");
    read(t, "margin", c.train.margin, "train");
    read(t, "seed", c.train.seed, "train");
  }
  c.train.validate();

  if (j.contains("split")) {
    const json& s = j.at("split");
    reject_unknown(s, "split", {"train", "val", "test", "seed"});
    read(s, "train", c.split.train, "split");
    read(s, "val", c.split.val, "split");
    read(s, "test", c.split.test, "split");
    read(s, "seed", c.split_seed, "split");
  }
  if (j.contains("penalty")) {
    const json& p = j.at("penalty");
    reject_unknown(p, "penalty", {"time_limit", "penalty_weight"});
    read(p, "time_limit", c.penalty.time_limit, "penalty");
    read(p, "penalty_weight", c.penalty.penalty_weight, "penalty");
    if (!(c.penalty.time_limit > 0)) config_error("penalty.time_limit must be positive");
  }
  if (j.contains("explain")) {
    const json& e = j.at("explain");
    reject_unknown(e, "explain", {"iters", "lr", "lambda_size", "lambda_entropy", "init_logit", "init_noise",
                                  "seed", "edge_sets"});
    read(e, "iters", c.explain.iters, "explain");
    read(e, "lr", c.explain.lr, "explain");
    read(e, "lambda_size", c.explain.lambda_size, "explain");
    read(e, "lambda_entropy", c.explain.lambda_entropy, "explain");
    read(e, "init_logit", c.explain.init_logit, "explain");
    read(e, "init_noise", c.explain.init_noise, "explain");
    read(e, "seed", c.explain.seed, "explain");
    if (e.contains("edge_sets")) c.explain.mask_sets = edge_sets_from(e.at("edge_sets"), "explain.edge_sets");
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) config_error(path + " is not valid JSON");
  apply_env_overrides(j, prefixed_environment());
  return parse_run_config(j, fs::path(path).parent_path().string());
}

json to_json(const RunConfig& c) {
  json m = model::model_config_to_json(c.model);
  m.erase("vocab_size");
  m.erase("portfolio_size");
  return {{"vocabulary", c.vocabulary},
          {"portfolio", c.portfolio},
          {"graphs", c.graphs},
          {"labels", c.labels},
          {"jobs", c.jobs},
          {"model", m},
          {"train",
           {{"epochs", c.train.epochs},
            {"initial_lr", c.train.initial_lr},
            {"patience", c.train.patience},
            {"decay", c.train.decay},
            {"min_lr", c.train.min_lr},
            {"margin", c.train.margin},
            {"seed", c.train.seed}}},
          {"split", {{"train", c.split.train}, {"val", c.split.val}, {"test", c.split.test}, {"seed", c.split_seed}}},
          {"penalty", {{"time_limit", c.penalty.time_limit}, {"penalty_weight", c.penalty.penalty_weight}}},
          {"explain",
           {{"iters", c.explain.iters},
            {"lr", c.explain.lr},
            {"lambda_size", c.explain.lambda_size},
            {"lambda_entropy", c.explain.lambda_entropy},
            {"init_logit", c.explain.init_logit},
            {"init_noise", c.explain.init_noise},
            {"seed", c.explain.seed},
            {"edge_sets", edge_sets_to(c.explain.mask_sets)}}}};
}

}  // namespace vsel::app
