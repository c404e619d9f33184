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

#include "vsel/trainer/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "vsel/error.hpp"
#include "vsel/trainer/metrics.hpp"

namespace vsel::trainer {

Baselines fit_baselines(std::span<const graphio::LabeledInstance> train_set) {
  if (train_set.empty()) throw Error(ErrorCode::kEmptySplit, "baselines: training set is empty");
  const std::size_t k = train_set[0].labels.size();
  std::vector<double> correct(k, 0.0);
  std::vector<double> best_count(k, 0.0);
  std::vector<std::vector<std::size_t>> ranks;
  for (const auto& inst : train_set) {
    if (inst.labels.size() != k || inst.solved.size() != k) {
      throw Error(ErrorCode::kLengthMismatch, "baselines: instance '" + inst.graph.id +
                                                  "' does not match a portfolio of " + std::to_string(k));
    }
    for (std::size_t v = 0; v < k; ++v) correct[v] += inst.solved[v] ? 1.0 : 0.0;
    best_count[best_verifier(inst.labels)] += 1.0;
    ranks.push_back(ranks_from_labels(inst.labels));
  }
  Baselines b;
  b.iss_success = best_verifier(correct);
  b.iss_rank = borda_ordering(ranks, k);
  b.iss_topk = model::order_by_score(best_count);
  return b;
}

std::vector<std::size_t> success_ordering(std::size_t chosen, std::size_t k) {
  std::vector<std::size_t> o = {chosen};
  for (std::size_t v = 0; v < k; ++v)
    if (v != chosen) o.push_back(v);
  return o;
}

namespace {

MetricBlock metrics_for(std::span<const std::vector<double>> predicted,
                        std::span<const graphio::LabeledInstance> instances,
                        const std::vector<std::size_t>& subset) {
  MetricBlock m;
  m.instances = subset.size();
  if (subset.empty()) return m;
  std::vector<std::vector<std::size_t>> orderings;
  std::vector<std::vector<bool>> solved;
  std::vector<std::size_t> best;
  double rho_sum = 0.0;
  std::size_t k = instances[subset[0]].labels.size();
  for (std::size_t i : subset) {
    const auto& inst = instances[i];
    orderings.push_back(model::order_by_score(predicted[i]));
    solved.push_back(inst.solved);
    best.push_back(best_verifier(inst.labels));
    const auto s = spearman(inst.labels, predicted[i]);
    rho_sum += s.rho;
    m.spearman_degenerate += s.degenerate ? 1 : 0;
    k = std::min(k, inst.labels.size());
  }
  m.spearman_mean = rho_sum / static_cast<double>(subset.size());
  try {
    const auto sr = success_accuracy(orderings, solved);
    m.success_accuracy = sr.accuracy;
    m.success_eligible = sr.eligible;
    m.excluded_none_solved = sr.excluded_none_solved;
    m.excluded_all_solved = sr.excluded_all_solved;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoEligibleInstances) throw;
    for (const auto& s : solved) {
      const auto n = static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
      (n == 0 ? m.excluded_none_solved : m.excluded_all_solved) += 1;
    }
  }
  for (std::size_t K = 1; K <= k; ++K) m.topk_error[K] = topk_error(orderings, best, K);
  return m;
}

}  // namespace

EvalReport evaluate(std::span<const std::vector<double>> predicted,
                    std::span<const graphio::LabeledInstance> instances) {
  if (predicted.size() != instances.size()) {
    throw Error(ErrorCode::kLengthMismatch, "evaluate: " + std::to_string(predicted.size()) +
                                                " predictions for " + std::to_string(instances.size()) +
                                                " instances");
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (predicted[i].size() != instances[i].labels.size()) {
      throw Error(ErrorCode::kLengthMismatch, "evaluate: instance '" + instances[i].graph.id +
                                                  "' has " + std::to_string(predicted[i].size()) +
                                                  " scores for " +
                                                  std::to_string(instances[i].labels.size()) + " labels");
    }
  }
  EvalReport r;
  std::vector<std::size_t> all(instances.size());
  std::iota(all.begin(), all.end(), 0);
  r.overall = metrics_for(predicted, instances, all);
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    groups[std::string(graphio::property_name(instances[i].graph.property))].push_back(i);
  }
  for (const auto& [name, idx] : groups) r.per_property[name] = metrics_for(predicted, instances, idx);
  return r;
}

std::vector<std::vector<double>> predict_all(std::span<const graphio::LabeledInstance> instances,
                                             const model::ModelParameters& params, std::size_t jobs) {
  std::vector<std::vector<double>> out(instances.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(1, instances.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        out[i] = model::predict(instances[i].graph, params).scores;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::pair<std::string, EvalReport>> evaluate_with_baselines(
    std::span<const std::vector<double>> model_scores,
    std::span<const graphio::LabeledInstance> train_set,
    std::span<const graphio::LabeledInstance> test_set, std::uint64_t random_seed) {
  const Baselines b = fit_baselines(train_set);
  const std::size_t k = b.iss_rank.size();
  auto constant = [&](const std::vector<std::size_t>& ordering) {
    return std::vector<std::vector<double>>(test_set.size(), scores_from_ordering(ordering));
  };
  RandomSelector rnd(k, random_seed);
  std::vector<std::vector<double>> random_scores;
  for (std::size_t i = 0; i < test_set.size(); ++i) random_scores.push_back(scores_from_ordering(rnd.next()));

  std::vector<std::pair<std::string, EvalReport>> out;
  out.emplace_back("model", evaluate(model_scores, test_set));
  out.emplace_back("ISS_success", evaluate(constant(success_ordering(b.iss_success, k)), test_set));
  out.emplace_back("ISS_rank", evaluate(constant(b.iss_rank), test_set));
  out.emplace_back("ISS_topk", evaluate(constant(b.iss_topk), test_set));
  out.emplace_back("Random", evaluate(random_scores, test_set));
  return out;
}

nlohmann::json to_json(const MetricBlock& m) {
  nlohmann::json j;
  j["instances"] = m.instances;
  j["success_accuracy"] = m.success_accuracy ? nlohmann::json(*m.success_accuracy) : nlohmann::json(nullptr);
  j["success_eligible"] = m.success_eligible;
  j["excluded_none_solved"] = m.excluded_none_solved;
  j["excluded_all_solved"] = m.excluded_all_solved;
  j["spearman_mean"] = m.spearman_mean;
  j["spearman_degenerate"] = m.spearman_degenerate;
  nlohmann::json topk = nlohmann::json::object();
  for (const auto& [K, e] : m.topk_error) topk[std::to_string(K)] = e;
  j["topk_error"] = topk;
  return j;
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j = to_json(r.overall);
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [name, m] : r.per_property) per[name] = to_json(m);
  j["per_property"] = per;
  return j;
}

nlohmann::json to_json(std::span<const std::pair<std::string, EvalReport>> reports) {
  nlohmann::json sel = nlohmann::json::object();
  for (const auto& [name, r] : reports) sel[name] = to_json(r);
  return {{"selectors", sel}};
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

void emit_section(std::ostringstream& os, const std::string& title,
                  const std::vector<std::string>& names, const std::vector<const MetricBlock*>& blocks) {
  std::vector<std::vector<std::string>> rows;
  auto add = [&](std::string label, auto cell) {
    std::vector<std::string> row = {std::move(label)};
    for (const MetricBlock* b : blocks) row.push_back(b ? cell(*b) : "-");
    rows.push_back(std::move(row));
  };
  add("instances", [](const MetricBlock& b) { return std::to_string(b.instances); });
  add("success", [](const MetricBlock& b) {
    return b.success_accuracy ? fmt(*b.success_accuracy) : std::string("n/a");
  });
  add("  eligible", [](const MetricBlock& b) { return std::to_string(b.success_eligible); });
  add("spearman", [](const MetricBlock& b) { return fmt(b.spearman_mean); });
  add("  degenerate", [](const MetricBlock& b) { return std::to_string(b.spearman_degenerate); });
  std::set<std::size_t> ks;
  for (const MetricBlock* b : blocks)
    if (b)
      for (const auto& [K, e] : b->topk_error) ks.insert(K);
  for (std::size_t K : ks) {
    add("top-" + std::to_string(K) + " error", [K](const MetricBlock& b) {
      auto it = b.topk_error.find(K);
      return it == b.topk_error.end() ? std::string("-") : fmt(it->second);
    });
  }

  std::vector<std::string> header = {title};
  header.insert(header.end(), names.begin(), names.end());
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c == 0) {
        os << r[c] << std::string(width[c] - r[c].size(), ' ');
      } else {
        os << "  " << std::string(width[c] - r[c].size(), ' ') << r[c];
      }
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace

std::string format_table(std::span<const std::pair<std::string, EvalReport>> reports) {
  std::ostringstream os;
  std::vector<std::string> names;
  std::vector<const MetricBlock*> overall;
  std::set<std::string> props;
  for (const auto& [name, r] : reports) {
    names.push_back(name);
    overall.push_back(&r.overall);
    for (const auto& [p, m] : r.per_property) props.insert(p);
  }
  emit_section(os, "overall", names, overall);
  for (const auto& p : props) {
    std::vector<const MetricBlock*> blocks;
    for (const auto& [name, r] : reports) {
      auto it = r.per_property.find(p);
      blocks.push_back(it == r.per_property.end() ? nullptr : &it->second);
    }
    os << '\n';
    emit_section(os, p, names, blocks);
  }
  return os.str();
}

}  // namespace vsel::trainer
