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

#include "vsel/vsel.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "vsel/app/pipeline.hpp"
#include "vsel/app/run_config.hpp"
#include "vsel/error.hpp"
#include "vsel/explain/explain.hpp"
#include "vsel/frontend/extract.hpp"
#include "vsel/graphio/graph_json.hpp"
#include "vsel/graphio/vocabulary.hpp"
#include "vsel/model/container.hpp"
#include "vsel/model/model.hpp"

struct vsel_vocab {
  vsel::graphio::TokenVocabulary v;
};
struct vsel_graph {
  vsel::graphio::ProgramGraph g;
};
struct vsel_model {
  vsel::model::ModelParameters p;
};

namespace {

using nlohmann::json;
using vsel::Error;
using vsel::ErrorCode;

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* name) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

json parse_json(const char* text, const char* what) {
  require(text, what);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is not valid JSON");
  return j;
}

vsel::graphio::PropertyKind property_arg(const char* name) {
  require(name, "property");
  auto p = vsel::graphio::parse_property(name);
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string("unknown property '") + name + "'");
  return *p;
}

template <typename F>
vsel_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return VSEL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<vsel_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return VSEL_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VSEL_E_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* vsel_version(void) { return "0.1.0"; }

const char* vsel_status_name(vsel_status status) {
  if (status == VSEL_OK) return "OK";
  if (status >= 1 && status <= 18) return vsel::error_code_name(static_cast<ErrorCode>(status));
  return "InternalError";
}

const char* vsel_last_error(void) { return g_last_error.c_str(); }

void vsel_string_free(char* s) { std::free(s); }

vsel_status vsel_config_resolve(const char* path, char** out_json) {
  return guarded([&] {
    require(path, "path");
    require(out_json, "out_json");
    *out_json = dup(vsel::app::to_json(vsel::app::load_run_config(path)).dump(2));
  });
}

vsel_status vsel_config_normalize(const char* text, const char* base_dir, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    const json j = parse_json(text, "config");
    *out_json = dup(vsel::app::to_json(vsel::app::parse_run_config(j, base_dir ? base_dir : "")).dump(2));
  });
}

vsel_status vsel_vocab_load(const char* path, vsel_vocab** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new vsel_vocab{vsel::graphio::TokenVocabulary::load(path)};
  });
}

void vsel_vocab_free(vsel_vocab* vocab) { delete vocab; }

vsel_status vsel_vocab_size(const vsel_vocab* vocab, size_t* out) {
  return guarded([&] {
    require(vocab, "vocab");
    require(out, "out");
    *out = vocab->v.size();
  });
}

vsel_status vsel_vocab_fingerprint(const vsel_vocab* vocab, char** out) {
  return guarded([&] {
    require(vocab, "vocab");
    require(out, "out");
    *out = dup(vocab->v.fingerprint());
  });
}

vsel_status vsel_graph_extract(const vsel_vocab* vocab, const char* source, const char* program_id,
                               const char* property, size_t node_cap, vsel_graph** out, char** diagnostics_json) {
  return guarded([&] {
    require(vocab, "vocab");
    require(source, "source");
    require(program_id, "program_id");
    require(out, "out");
    auto ex = vsel::frontend::extract_program(source, program_id, property_arg(property), vocab->v,
                                              node_cap ? node_cap : vsel::frontend::kDefaultNodeCap);
    if (diagnostics_json) *diagnostics_json = dup(json(ex.diagnostics).dump());
    *out = new vsel_graph{std::move(ex.graph)};
  });
}

vsel_status vsel_graph_load(const char* path, vsel_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new vsel_graph{vsel::graphio::load_graph(path)};
  });
}

vsel_status vsel_graph_from_json(const char* text, vsel_graph** out) {
  return guarded([&] {
    require(text, "json");
    require(out, "out");
    *out = new vsel_graph{vsel::graphio::deserialize_graph(text)};
  });
}

vsel_status vsel_graph_to_json(const vsel_graph* graph, char** out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    *out = dup(vsel::graphio::serialize_graph(graph->g));
  });
}

vsel_status vsel_graph_save(const vsel_graph* graph, const char* path) {
  return guarded([&] {
    require(graph, "graph");
    require(path, "path");
    vsel::graphio::save_graph(graph->g, path);
  });
}

vsel_status vsel_graph_set_property(vsel_graph* graph, const char* property) {
  return guarded([&] {
    require(graph, "graph");
    graph->g.property = property_arg(property);
  });
}

vsel_status vsel_graph_info(const vsel_graph* graph, char** out_json) {
  return guarded([&] {
    require(graph, "graph");
    require(out_json, "out_json");
    json edges = json::object();
    for (auto s : vsel::graphio::kAllEdgeSets) {
      edges[std::string(vsel::graphio::edge_set_name(s))] = graph->g.edge_set(s).size();
    }
    *out_json = dup(json{{"id", graph->g.id},
                         {"property", std::string(vsel::graphio::property_name(graph->g.property))},
                         {"num_nodes", graph->g.num_nodes()},
                         {"edges", edges}}
                        .dump());
  });
}

void vsel_graph_free(vsel_graph* graph) { delete graph; }

vsel_status vsel_model_init(const char* model_config_json, const char* portfolio_json, const char* vocab_fingerprint,
                            uint64_t seed, vsel_model** out) {
  return guarded([&] {
    require(out, "out");
    const json cj = parse_json(model_config_json, "model config");
    const json pj = parse_json(portfolio_json, "portfolio");
    if (!pj.is_array() || pj.empty()) throw Error(ErrorCode::kConfig, "portfolio must be a nonempty array");
    std::vector<std::string> portfolio;
    for (const auto& v : pj) {
      if (!v.is_string()) throw Error(ErrorCode::kConfig, "portfolio entries must be strings");
      portfolio.push_back(v.get<std::string>());
    }
    auto cfg = vsel::model::model_config_from_json(cj);
    cfg.portfolio_size = portfolio.size();
    *out = new vsel_model{vsel::model::init_parameters(cfg, std::move(portfolio),
                                                       vocab_fingerprint ? vocab_fingerprint : "", seed)};
  });
}

vsel_status vsel_model_load(const char* path, vsel_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new vsel_model{vsel::model::load_model(path)};
  });
}

vsel_status vsel_model_save(const vsel_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    vsel::model::save_model(model->p, path);
  });
}

vsel_status vsel_model_info(const vsel_model* model, char** out_json) {
  return guarded([&] {
    require(model, "model");
    require(out_json, "out_json");
    std::size_t count = 0;
    for (const auto& t : model->p.tensors()) count += t.value().size();
    *out_json = dup(json{{"config", vsel::model::model_config_to_json(model->p.config)},
                         {"portfolio", model->p.portfolio},
                         {"vocab_fingerprint", model->p.vocab_fingerprint},
                         {"parameter_count", count}}
                        .dump());
  });
}

vsel_status vsel_model_rank(const vsel_model* model, const vsel_graph* graph, char** out_json) {
  return guarded([&] {
    require(model, "model");
    require(graph, "graph");
    require(out_json, "out_json");
    const auto r = vsel::model::predict(graph->g, model->p);
    json ranking = json::array();
    for (std::size_t pos = 0; pos < r.ordering.size(); ++pos) {
      const std::size_t v = r.ordering[pos];
      ranking.push_back({{"rank", pos + 1}, {"verifier", model->p.portfolio[v]}, {"index", v}, {"score", r.scores[v]}});
    }
    *out_json = dup(json{{"graph_id", graph->g.id},
                         {"property", std::string(vsel::graphio::property_name(graph->g.property))},
                         {"ranking", ranking}}
                        .dump());
  });
}

void vsel_model_free(vsel_model* model) { delete model; }

vsel_status vsel_extract_corpus(const char* request_json, char** summary_json) {
  return guarded([&] {
    require(summary_json, "summary_json");
    const json req = parse_json(request_json, "request");
    std::vector<std::string> inputs;
    std::string out_dir, vocab_path, property = "ReachSafety";
    std::size_t node_cap = vsel::frontend::kDefaultNodeCap, jobs = 1;
    try {
      inputs = req.at("inputs").get<std::vector<std::string>>();
      out_dir = req.at("out_dir").get<std::string>();
      vocab_path = req.at("vocabulary").get<std::string>();
      if (req.contains("property")) property = req.at("property").get<std::string>();
      if (req.contains("node_cap")) node_cap = req.at("node_cap").get<std::size_t>();
      if (req.contains("jobs")) jobs = req.at("jobs").get<std::size_t>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, std::string("extract request: ") + e.what());
    }
    const auto vocab = vsel::graphio::TokenVocabulary::load(vocab_path);
    *summary_json =
        dup(vsel::app::extract_corpus(inputs, out_dir, vocab, property_arg(property.c_str()), node_cap, jobs).dump(2));
  });
}

vsel_status vsel_train(const char* run_config_json, vsel_epoch_fn on_epoch, void* user, vsel_model** out_model,
                       char** summary_json) {
  return guarded([&] {
    require(out_model, "out_model");
    const auto cfg = vsel::app::parse_run_config(parse_json(run_config_json, "run config"), "");
    vsel::trainer::EpochCallback cb;
    if (on_epoch) {
      cb = [&](const vsel::trainer::EpochRecord& r) { on_epoch(r.epoch, r.train_loss, r.val_loss, r.lr, user); };
    }
    auto run = vsel::app::run_train(cfg, cb);
    if (summary_json) *summary_json = dup(run.summary.dump(2));
    *out_model = new vsel_model{std::move(run.params)};
  });
}

vsel_status vsel_evaluate(const vsel_model* model, const char* run_config_json, const char* options_json,
                          char** report_json, char** table_text) {
  return guarded([&] {
    require(model, "model");
    require(report_json, "report_json");
    const auto cfg = vsel::app::parse_run_config(parse_json(run_config_json, "run config"), "");
    std::string subset = "test";
    std::vector<std::size_t> ks;
    if (options_json) {
      const json o = parse_json(options_json, "options");
      try {
        if (o.contains("subset")) subset = o.at("subset").get<std::string>();
        if (o.contains("ks")) ks = o.at("ks").get<std::vector<std::size_t>>();
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kInvalidArgument, std::string("evaluate options: ") + e.what());
      }
    }
    auto run = vsel::app::run_evaluate(model->p, cfg, subset, ks);
    *report_json = dup(run.json.dump(2));
    if (table_text) *table_text = dup(run.table);
  });
}

vsel_status vsel_explain(const vsel_model* model, const vsel_graph* graph, const vsel_vocab* vocab,
                         const char* options_json, char** report_json, char** dot) {
  return guarded([&] {
    require(model, "model");
    require(graph, "graph");
    require(report_json, "report_json");
    vsel::explain::ExplainConfig ec;
    if (options_json) {
      // Reuse the run-config parser for the "explain" block.
      json wrapper = {{"portfolio", model->p.portfolio}, {"explain", parse_json(options_json, "options")}};
      ec = vsel::app::parse_run_config(wrapper, "", false).explain;
    }
    const auto* v = vocab ? &vocab->v : nullptr;
    const auto mask = vsel::explain::explain(model->p, graph->g, ec);
    const auto report = vsel::explain::top_m_edges(mask, graph->g, v);
    *report_json = dup(vsel::explain::to_json(report, mask).dump(2));
    if (dot) *dot = dup(vsel::explain::to_dot(report, mask, graph->g, v));
  });
}

}  // extern "C"
