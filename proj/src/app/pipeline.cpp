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

#include "vsel/app/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "vsel/error.hpp"
#include "vsel/frontend/extract.hpp"
#include "vsel/graphio/graph_json.hpp"

namespace vsel::app {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<graphio::ProgramGraph> load_graph_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<graphio::ProgramGraph> out;
  for (const auto& f : files) out.push_back(graphio::load_graph(f.string()));
  return out;
}

std::vector<graphio::LabeledInstance> Dataset::subset(const std::vector<std::size_t>& idx) const {
  std::vector<graphio::LabeledInstance> out;
  for (std::size_t i : idx) out.push_back(instances.at(i));
  return out;
}

Dataset load_dataset(const RunConfig& cfg) {
  if (cfg.graphs.empty()) throw Error(ErrorCode::kConfig, "config: 'graphs' is not set");
  if (cfg.labels.empty()) throw Error(ErrorCode::kConfig, "config: 'labels' is not set");
  Dataset d;
  d.instances = graphio::assemble_instances(load_graph_dir(cfg.graphs), graphio::load_labels_csv(cfg.labels),
                                            cfg.portfolio, cfg.penalty);
  std::vector<graphio::PropertyKind> props;
  for (const auto& inst : d.instances) props.push_back(inst.graph.property);
  d.split = graphio::split_dataset(props, cfg.split, cfg.split_seed);
  return d;
}

json history_to_json(const trainer::TrainHistory& h) {
  json epochs = json::array();
  for (const auto& e : h.epochs) {
    epochs.push_back({{"epoch", e.epoch}, {"train_loss", e.train_loss}, {"val_loss", e.val_loss}, {"lr", e.lr}});
  }
  return {{"epochs", epochs},
          {"stop_reason", std::string(trainer::stop_reason_name(h.stop))},
          {"best_epoch", h.best_epoch},
          {"best_val_loss", h.best_val_loss}};
}

TrainRun run_train(const RunConfig& cfg, const trainer::EpochCallback& on_epoch) {
  if (cfg.vocabulary.empty()) throw Error(ErrorCode::kConfig, "config: 'vocabulary' is not set");
  const auto vocab = graphio::TokenVocabulary::load(cfg.vocabulary);
  model::ModelConfig mc = cfg.model;
  mc.vocab_size = vocab.size();
  mc.portfolio_size = cfg.portfolio.size();
  mc.validate();
  const Dataset d = load_dataset(cfg);
  const auto train_set = d.subset(d.split.train);
  const auto val_set = d.subset(d.split.val);
  auto init = model::init_parameters(mc, cfg.portfolio, vocab.fingerprint(), cfg.train.seed);
  auto res = trainer::train(train_set, val_set, init, cfg.train, on_epoch);
  TrainRun run{std::move(res.params), res.history, history_to_json(res.history)};
  run.summary["split"] = {{"train", d.split.train.size()},
                          {"val", d.split.val.size()},
                          {"test", d.split.test.size()},
                          {"warnings", d.split.warnings}};
  return run;
}

EvaluateRun run_evaluate(const model::ModelParameters& params, const RunConfig& cfg, const std::string& subset,
                         const std::vector<std::size_t>& ks) {
  if (subset != "test" && subset != "all") {
    throw Error(ErrorCode::kInvalidArgument, "subset must be 'test' or 'all', got '" + subset + "'");
  }
  const std::size_t k = params.portfolio.size();
  for (std::size_t K : ks) {
    if (K < 1 || K > k) {
      throw Error(ErrorCode::kBadK, "K=" + std::to_string(K) + " outside 1.." + std::to_string(k));
    }
  }
  const Dataset d = load_dataset(cfg);
  std::vector<graphio::LabeledInstance> fit, test;
  if (subset == "test") {
    fit = d.subset(d.split.train);
    test = d.subset(d.split.test);
  } else {
    fit = d.instances;
    test = d.instances;
  }
  if (test.empty()) throw Error(ErrorCode::kEmptySplit, "evaluation set is empty");
  const auto scores = trainer::predict_all(test, params, cfg.jobs);
  EvaluateRun run;
  run.reports = trainer::evaluate_with_baselines(scores, fit, test, cfg.train.seed);
  if (!ks.empty()) {
    const std::set<std::size_t> keep(ks.begin(), ks.end());
    auto trim = [&](trainer::MetricBlock& m) {
      std::erase_if(m.topk_error, [&](const auto& kv) { return !keep.count(kv.first); });
    };
    for (auto& [name, r] : run.reports) {
      trim(r.overall);
      for (auto& [p, m] : r.per_property) trim(m);
    }
  }
  run.json = trainer::to_json(run.reports);
  run.json["subset"] = subset;
  run.json["instances"] = test.size();
  run.table = trainer::format_table(run.reports);
  return run;
}

json graph_stats(std::span<const graphio::ProgramGraph> graphs) {
  auto block = [](const std::vector<const graphio::ProgramGraph*>& gs) {
    std::size_t max_n = 0, max_e = 0;
    double sum_n = 0, sum_e = 0;
    for (const auto* g : gs) {
      max_n = std::max(max_n, g->num_nodes());
      max_e = std::max(max_e, g->num_edges());
      sum_n += static_cast<double>(g->num_nodes());
      sum_e += static_cast<double>(g->num_edges());
    }
    const double n = gs.empty() ? 1.0 : static_cast<double>(gs.size());
    return json{{"count", gs.size()},
                {"max_nodes", max_n},
                {"mean_nodes", sum_n / n},
                {"max_edges", max_e},
                {"mean_edges", sum_e / n}};
  };
  std::vector<const graphio::ProgramGraph*> all;
  std::map<std::string, std::vector<const graphio::ProgramGraph*>> by_prop;
  for (const auto& g : graphs) {
    all.push_back(&g);
    by_prop[std::string(graphio::property_name(g.property))].push_back(&g);
  }
  json j = block(all);
  json per = json::object();
  for (const auto& [p, gs] : by_prop) per[p] = block(gs);
  j["per_property"] = per;
  return j;
}

json extract_corpus(const std::vector<std::string>& inputs, const std::string& out_dir,
                    const graphio::TokenVocabulary& vocab, graphio::PropertyKind property, std::size_t node_cap,
                    std::size_t jobs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in)) {
        const auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".c" || ext == ".i")) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(in);
    }
  }
  fs::create_directories(out_dir);

  struct Result {
    std::optional<graphio::ProgramGraph> graph;
    std::vector<std::string> messages;
  };
  std::vector<Result> results(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        std::ifstream f(files[i]);
        if (!f) throw Error(ErrorCode::kIo, "cannot read " + files[i].string());
        std::stringstream ss;
        ss << f.rdbuf();
        auto ex = frontend::extract_program(ss.str(), files[i].stem().string(), property, vocab, node_cap);
        graphio::save_graph(ex.graph, (fs::path(out_dir) / (files[i].stem().string() + ".json")).string());
        results[i].graph = std::move(ex.graph);
        results[i].messages = std::move(ex.diagnostics);
      } catch (const Error& e) {
        results[i].messages.push_back(std::string(error_code_name(e.code())) + ": " + e.what());
      } catch (const std::exception& e) {
        results[i].messages.push_back(e.what());
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(1, files.size()));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::vector<graphio::ProgramGraph> graphs;
  json diags = json::array();
  std::size_t failed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (results[i].graph) {
      graphs.push_back(*results[i].graph);
    } else {
      ++failed;
    }
    for (const auto& m : results[i].messages) {
      diags.push_back({{"file", files[i].string()}, {"fatal", !results[i].graph}, {"message", m}});
    }
  }
  return {{"written", graphs.size()}, {"failed", failed}, {"diagnostics", diags}, {"stats", graph_stats(graphs)}};
}

}  // namespace vsel::app
