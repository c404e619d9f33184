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

// Command-line front end. Talks to the library only through vsel.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vsel/vsel.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Failure : std::runtime_error {
  int exit_code;
  Failure(const std::string& m, int code) : std::runtime_error(m), exit_code(code) {}
};

void check(vsel_status s, const std::string& what) {
  if (s == VSEL_OK) return;
  throw Failure(what + ": " + vsel_status_name(s) + ": " + vsel_last_error(), kExitRuntime);
}

// Takes ownership of a library string.
std::string take(char* s) {
  if (!s) return {};
  std::string out(s);
  vsel_string_free(s);
  return out;
}

struct VocabDel {
  void operator()(vsel_vocab* v) const { vsel_vocab_free(v); }
};
struct GraphDel {
  void operator()(vsel_graph* g) const { vsel_graph_free(g); }
};
struct ModelDel {
  void operator()(vsel_model* m) const { vsel_model_free(m); }
};
using Vocab = std::unique_ptr<vsel_vocab, VocabDel>;
using Graph = std::unique_ptr<vsel_graph, GraphDel>;
using Model = std::unique_ptr<vsel_model, ModelDel>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read " + path, kExitRuntime);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure("cannot write " + path, kExitRuntime);
}

std::string absolute(const std::string& p) { return p.empty() ? p : fs::absolute(p).lexically_normal().string(); }

Vocab load_vocab(const std::string& path) {
  vsel_vocab* v = nullptr;
  check(vsel_vocab_load(path.c_str(), &v), "vocabulary " + path);
  return Vocab(v);
}

Model load_model(const std::string& path) {
  vsel_model* m = nullptr;
  check(vsel_model_load(path.c_str(), &m), "model " + path);
  return Model(m);
}

// Options shared by every subcommand.
struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
};

// Resolved run config with command-line overrides folded in. Paths given on
// the command line are relative to the working directory.
json resolve_config(const Common& c, const json& path_overrides) {
  json j;
  if (!c.config.empty()) {
    char* out = nullptr;
    check(vsel_config_resolve(c.config.c_str(), &out), "config " + c.config);
    j = json::parse(take(out));
  }
  for (const auto& [k, v] : path_overrides.items()) j[k] = absolute(v.get<std::string>());
  if (c.seed) {
    j["train"]["seed"] = *c.seed;
    j["split"]["seed"] = *c.seed;
    j["explain"]["seed"] = *c.seed;
  }
  if (c.jobs) j["jobs"] = *c.jobs;
  if (!j.contains("portfolio")) throw Failure("a config with a portfolio is required (--config)", kExitUsage);
  char* out = nullptr;
  check(vsel_config_normalize(j.dump().c_str(), "", &out), "config");
  return json::parse(take(out));
}

void add_common(CLI::App* app, Common& c, bool config_required) {
  auto* opt = app->add_option("-c,--config", c.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
  if (config_required) opt->required();
  app->add_option("--seed", c.seed, "Override every seed in the config");
  app->add_option("-j,--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

// A graph from a .json file, or extracted on the fly from C source.
Graph load_graph_input(const std::string& path, const std::string& vocab_path, const std::string& property) {
  vsel_graph* g = nullptr;
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".c" || ext == ".i") {
    if (vocab_path.empty()) throw Failure("C input needs --vocab or a config with a vocabulary", kExitUsage);
    auto vocab = load_vocab(vocab_path);
    const std::string src = read_file(path);
    const std::string id = fs::path(path).stem().string();
    char* diags = nullptr;
    check(vsel_graph_extract(vocab.get(), src.c_str(), id.c_str(), property.empty() ? "ReachSafety" : property.c_str(),
                             0, &g, &diags),
          "extract " + path);
    for (const auto& d : json::parse(take(diags))) std::cerr << path << ": note: " << d.get<std::string>() << "\n";
  } else {
    check(vsel_graph_load(path.c_str(), &g), "graph " + path);
  }
  Graph out(g);
  if (!property.empty()) check(vsel_graph_set_property(out.get(), property.c_str()), "property");
  return out;
}

std::string config_vocab(const Common& c, const std::string& explicit_vocab) {
  if (!explicit_vocab.empty()) return explicit_vocab;
  if (c.config.empty()) return {};
  char* out = nullptr;
  check(vsel_config_resolve(c.config.c_str(), &out), "config " + c.config);
  return json::parse(take(out)).value("vocabulary", std::string());
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    write_file(path, text.back() == '\n' ? text : text + "\n");
  }
}

// ---- extract

struct ExtractArgs {
  Common common;
  std::vector<std::string> inputs;
  std::string out_dir;
  std::string vocab;
  std::string property = "ReachSafety";
  std::size_t node_cap = 0;
  std::string stats;
};

int run_extract(const ExtractArgs& a) {
  const std::string vocab = config_vocab(a.common, a.vocab);
  if (vocab.empty()) throw Failure("extract needs --vocab or a config with a vocabulary", kExitUsage);
  json req = {{"inputs", json::array()}, {"out_dir", a.out_dir}, {"vocabulary", vocab}, {"property", a.property}};
  for (const auto& p : a.inputs) req["inputs"].push_back(p);
  if (a.node_cap) req["node_cap"] = a.node_cap;
  req["jobs"] = a.common.jobs.value_or(1);
  fs::create_directories(a.out_dir);
  char* out = nullptr;
  check(vsel_extract_corpus(req.dump().c_str(), &out), "extract");
  const json summary = json::parse(take(out));
  for (const auto& d : summary.at("diagnostics")) {
    std::cerr << d.at("file").get<std::string>() << ": " << (d.at("fatal").get<bool>() ? "error: " : "note: ")
              << d.at("message").get<std::string>() << "\n";
  }
  emit(summary.at("stats").dump(2), a.stats);
  std::cerr << "extracted " << summary.at("written") << " graph(s), " << summary.at("failed") << " failed\n";
  return summary.at("failed").get<std::size_t>() == 0 ? kExitOk : kExitRuntime;
}

// ---- train

struct TrainArgs {
  Common common;
  std::string graphs, labels, out_model, history;
  bool quiet = false;
};

void log_epoch(size_t epoch, double train_loss, double val_loss, double lr, void* user) {
  if (*static_cast<bool*>(user)) return;
  std::fprintf(stderr, "epoch %4zu  train %.6f  val %.6f  lr %.3g\n", epoch, train_loss, val_loss, lr);
}

int run_train(TrainArgs& a) {
  json paths = json::object();
  if (!a.graphs.empty()) paths["graphs"] = a.graphs;
  if (!a.labels.empty()) paths["labels"] = a.labels;
  const json cfg = resolve_config(a.common, paths);
  vsel_model* m = nullptr;
  char* summary = nullptr;
  check(vsel_train(cfg.dump().c_str(), log_epoch, &a.quiet, &m, &summary), "train");
  Model model(m);
  const json hist = json::parse(take(summary));
  check(vsel_model_save(model.get(), a.out_model.c_str()), "save " + a.out_model);
  const std::string hist_path = a.history.empty() ? a.out_model + ".history.json" : a.history;
  write_file(hist_path, hist.dump(2) + "\n");
  std::cerr << "stopped: " << hist.at("stop_reason").get<std::string>() << ", best epoch "
            << hist.at("best_epoch") << " (val " << hist.at("best_val_loss") << ")\n"
            << "wrote " << a.out_model << " and " << hist_path << "\n";
  return kExitOk;
}

// ---- rank

struct RankArgs {
  Common common;
  std::string model, graph, property, vocab, format = "text";
};

int run_rank(const RankArgs& a) {
  auto model = load_model(a.model);
  auto graph = load_graph_input(a.graph, config_vocab(a.common, a.vocab), a.property);
  char* out = nullptr;
  check(vsel_model_rank(model.get(), graph.get(), &out), "rank");
  const json r = json::parse(take(out));
  if (a.format == "json") {
    std::cout << r.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "# " << r.at("graph_id").get<std::string>() << " (" << r.at("property").get<std::string>() << ")\n";
  for (const auto& e : r.at("ranking")) {
    std::printf("%3zu  %-24s %.9g\n", e.at("rank").get<std::size_t>(), e.at("verifier").get<std::string>().c_str(),
                e.at("score").get<double>());
  }
  return kExitOk;
}

// ---- evaluate

struct EvaluateArgs {
  Common common;
  std::string model, graphs, labels, subset = "test", output;
  std::vector<std::size_t> ks;
  bool json_out = false;
};

int run_evaluate(const EvaluateArgs& a) {
  json paths = json::object();
  if (!a.graphs.empty()) paths["graphs"] = a.graphs;
  if (!a.labels.empty()) paths["labels"] = a.labels;
  const json cfg = resolve_config(a.common, paths);
  auto model = load_model(a.model);
  json opts = {{"subset", a.subset}};
  if (!a.ks.empty()) opts["ks"] = a.ks;
  char* report = nullptr;
  char* table = nullptr;
  const vsel_status s = vsel_evaluate(model.get(), cfg.dump().c_str(), opts.dump().c_str(), &report, &table);
  if (s == VSEL_E_BAD_K) throw Failure(std::string("--ks: ") + vsel_last_error(), kExitUsage);
  check(s, "evaluate");
  const std::string report_text = json::parse(take(report)).dump(2);
  const std::string table_text = take(table);
  if (!a.output.empty()) write_file(a.output, report_text + "\n");
  std::cout << (a.json_out ? report_text + "\n" : table_text);
  return kExitOk;
}

// ---- explain

struct ExplainArgs {
  Common common;
  std::string model, graph, property, vocab, output, dot;
  std::optional<std::size_t> iters;
  std::optional<double> lr;
  std::vector<std::string> edge_sets;
};

int run_explain(const ExplainArgs& a) {
  json opts = json::object();
  if (!a.common.config.empty()) {
    char* out = nullptr;
    check(vsel_config_resolve(a.common.config.c_str(), &out), "config " + a.common.config);
    opts = json::parse(take(out)).at("explain");
  }
  if (a.iters) opts["iters"] = *a.iters;
  if (a.lr) opts["lr"] = *a.lr;
  if (a.common.seed) opts["seed"] = *a.common.seed;
  if (!a.edge_sets.empty()) opts["edge_sets"] = a.edge_sets;

  auto model = load_model(a.model);
  const std::string vocab_path = config_vocab(a.common, a.vocab);
  auto graph = load_graph_input(a.graph, vocab_path, a.property);
  Vocab vocab;
  if (!vocab_path.empty()) vocab = load_vocab(vocab_path);

  char* report = nullptr;
  char* dot = nullptr;
  check(vsel_explain(model.get(), graph.get(), vocab.get(), opts.dump().c_str(), &report, a.dot.empty() ? nullptr : &dot),
        "explain");
  emit(json::parse(take(report)).dump(2), a.output);
  if (!a.dot.empty()) write_file(a.dot, take(dot));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vsel: rank program verifiers with a graph attention model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vsel_version()));

  ExtractArgs ex;
  auto* c_ex = app.add_subcommand("extract", "Build program graphs from C sources");
  add_common(c_ex, ex.common, false);
  c_ex->add_option("inputs", ex.inputs, "C files or directories")->required()->check(CLI::ExistingPath);
  c_ex->add_option("-o,--out", ex.out_dir, "Output directory for graph JSON")->required();
  c_ex->add_option("--vocab", ex.vocab, "Token vocabulary")->check(CLI::ExistingFile);
  c_ex->add_option("--property", ex.property, "Property attached to every graph");
  c_ex->add_option("--node-cap", ex.node_cap, "Reject graphs larger than this");
  c_ex->add_option("--stats", ex.stats, "Write summary statistics here instead of stdout");

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Train a model");
  add_common(c_tr, tr.common, true);
  c_tr->add_option("--graphs", tr.graphs, "Graph directory (overrides config)")->check(CLI::ExistingDirectory);
  c_tr->add_option("--labels", tr.labels, "Labels CSV (overrides config)")->check(CLI::ExistingFile);
  c_tr->add_option("-o,--out", tr.out_model, "Model file to write")->required();
  c_tr->add_option("--history", tr.history, "History JSON (default <out>.history.json)");
  c_tr->add_flag("-q,--quiet", tr.quiet, "No per-epoch log");

  RankArgs rk;
  auto* c_rk = app.add_subcommand("rank", "Rank the portfolio for one program");
  add_common(c_rk, rk.common, false);
  c_rk->add_option("-m,--model", rk.model, "Model file")->required()->check(CLI::ExistingFile);
  c_rk->add_option("graph", rk.graph, "Graph JSON or C source")->required()->check(CLI::ExistingFile);
  c_rk->add_option("-p,--property", rk.property, "Property to verify")->required();
  c_rk->add_option("--vocab", rk.vocab, "Vocabulary for C input")->check(CLI::ExistingFile);
  c_rk->add_option("--format", rk.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  EvaluateArgs ev;
  auto* c_ev = app.add_subcommand("evaluate", "Score a model against labels and baselines");
  add_common(c_ev, ev.common, true);
  c_ev->add_option("-m,--model", ev.model, "Model file")->required()->check(CLI::ExistingFile);
  c_ev->add_option("--graphs", ev.graphs, "Graph directory (overrides config)")->check(CLI::ExistingDirectory);
  c_ev->add_option("--labels", ev.labels, "Labels CSV (overrides config)")->check(CLI::ExistingFile);
  c_ev->add_option("--subset", ev.subset, "Instances to score")->check(CLI::IsMember({"test", "all"}));
  c_ev->add_option("--ks", ev.ks, "Top-K cutoffs")->delimiter(',');
  c_ev->add_option("-o,--out", ev.output, "Write the JSON report here");
  c_ev->add_flag("--json", ev.json_out, "Print JSON instead of the table");

  ExplainArgs xp;
  auto* c_xp = app.add_subcommand("explain", "Find the edges that drive a prediction");
  add_common(c_xp, xp.common, false);
  c_xp->add_option("-m,--model", xp.model, "Model file")->required()->check(CLI::ExistingFile);
  c_xp->add_option("graph", xp.graph, "Graph JSON or C source")->required()->check(CLI::ExistingFile);
  c_xp->add_option("-p,--property", xp.property, "Override the graph's property");
  c_xp->add_option("--vocab", xp.vocab, "Vocabulary (names node kinds)")->check(CLI::ExistingFile);
  c_xp->add_option("-o,--out", xp.output, "Report JSON (default stdout)");
  c_xp->add_option("--dot", xp.dot, "Write a DOT rendering here");
  c_xp->add_option("--iters", xp.iters, "Optimizer iterations");
  c_xp->add_option("--lr", xp.lr, "Optimizer step size");
  c_xp->add_option("--edge-sets", xp.edge_sets, "Mask only these sets (AST,ICFG,DFG)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_ex) return run_extract(ex);
    if (*c_tr) return run_train(tr);
    if (*c_rk) return run_rank(rk);
    if (*c_ev) return run_evaluate(ev);
    if (*c_xp) return run_explain(xp);
  } catch (const Failure& f) {
    std::cerr << "vsel: " << f.what() << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "vsel: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
