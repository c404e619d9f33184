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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "vsel/error.hpp"
#include "vsel/model/container.hpp"
#include "vsel/trainer/evaluate.hpp"
#include "vsel/trainer/metrics.hpp"
#include "vsel/trainer/train.hpp"

using vsel::Error;
using vsel::ErrorCode;
using vsel::Rng;
using vsel::graphio::LabeledInstance;
namespace tr = vsel::trainer;
namespace model = vsel::model;
namespace oracle = vsel::oracle;

namespace {

template <typename F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("expected error code " << static_cast<int>(code));
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

LabeledInstance instance(std::vector<double> labels, std::vector<bool> solved,
                         vsel::graphio::PropertyKind prop = vsel::graphio::PropertyKind::kReachSafety) {
  LabeledInstance inst;
  inst.graph.id = "i";
  inst.graph.node_kinds = {0};
  inst.graph.property = prop;
  inst.labels = std::move(labels);
  inst.solved = std::move(solved);
  return inst;
}

}  // namespace

TEST_CASE("spearman examples") {
  std::vector<double> x = {1, 2, 3, 4};
  CHECK(tr::spearman(x, x).rho == 1.0);
  CHECK(tr::spearman(x, std::vector<double>{4, 3, 2, 1}).rho == -1.0);
  CHECK(tr::spearman(x, std::vector<double>{1, 2, 4, 3}).rho == 0.8);
  CHECK(tr::spearman(std::vector<double>{10, 20, 30}, std::vector<double>{0.1, 0.5, 0.2}).rho ==
        doctest::Approx(0.5));
}

TEST_CASE("spearman degenerate and length errors") {
  auto r = tr::spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3});
  CHECK(r.degenerate);
  CHECK(r.rho == 0.0);
  CHECK(tr::spearman(std::vector<double>{1, 2, 3}, std::vector<double>{7, 7, 7}).degenerate);
  expect_code(ErrorCode::kLengthMismatch, [] { tr::spearman(std::vector<double>{1, 2}, std::vector<double>{1}); });
  expect_code(ErrorCode::kLengthMismatch, [] { tr::spearman(std::vector<double>{1}, std::vector<double>{1}); });
}

TEST_CASE("spearman equals pearson of ranks on random pairs") {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.index(12);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = rng.uniform(-5, 5);
    for (auto& v : y) v = rng.uniform(-5, 5);
    const double want = oracle::pearson(oracle::counting_ranks(x), oracle::counting_ranks(y));
    CHECK(std::abs(tr::spearman(x, y).rho - want) < 1e-9);
  }
}

TEST_CASE("average ranks share ties") {
  CHECK(tr::average_ranks(std::vector<double>{3, 1, 3, 2}) == std::vector<double>{3.5, 1, 3.5, 2});
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(1 + rng.index(10));
    for (auto& v : x) v = static_cast<double>(rng.index(4));
    CHECK(tr::average_ranks(x) == oracle::counting_ranks(x));
  }
}

TEST_CASE("rank helpers") {
  CHECK(tr::ranks_from_labels(std::vector<double>{0.5, 2.0, 1.0}) == std::vector<std::size_t>{3, 1, 2});
  CHECK(tr::ranks_from_labels(std::vector<double>{1, 1, 0}) == std::vector<std::size_t>{1, 2, 3});
  CHECK(tr::ranks_from_ordering(std::vector<std::size_t>{2, 0, 1}) == std::vector<std::size_t>{2, 3, 1});
  CHECK(tr::scores_from_ordering(std::vector<std::size_t>{2, 0, 1}) == std::vector<double>{2, 1, 3});
  CHECK(tr::best_verifier(std::vector<double>{1, 3, 3, 0}) == 1);
}

TEST_CASE("borda examples") {
  std::vector<std::vector<std::size_t>> one = {{2, 3, 1}};
  CHECK(tr::borda_ordering(one, 3) == std::vector<std::size_t>{2, 0, 1});
  // Orderings (v1,v2,v3) and (v2,v1,v3) as rank vectors.
  std::vector<std::vector<std::size_t>> two = {{1, 2, 3}, {2, 1, 3}};
  CHECK(tr::borda_ordering(two, 3) == std::vector<std::size_t>{0, 1, 2});
  std::vector<std::vector<std::size_t>> bad = {{1, 1, 3}};
  expect_code(ErrorCode::kInvalidRanking, [&] { tr::borda_ordering(bad, 3); });
  std::vector<std::vector<std::size_t>> shortv = {{1, 2}};
  expect_code(ErrorCode::kInvalidRanking, [&] { tr::borda_ordering(shortv, 3); });
  std::vector<std::vector<std::size_t>> zero = {{0, 1, 2}};
  expect_code(ErrorCode::kInvalidRanking, [&] { tr::borda_ordering(zero, 3); });
}

TEST_CASE("borda maximizes mean spearman over all static orderings") {
  Rng rng(3);
  for (std::size_t k : {3u, 4u, 5u}) {
    for (int table = 0; table < 20; ++table) {
      std::vector<std::vector<double>> labels;
      std::vector<std::vector<std::size_t>> ranks;
      for (std::size_t i = 0, n = 1 + rng.index(8); i < n; ++i) {
        std::vector<double> l(k);
        for (std::size_t v = 0; v < k; ++v) l[v] = static_cast<double>(v);
        rng.shuffle(l);
        ranks.push_back(tr::ranks_from_labels(l));
        labels.push_back(std::move(l));
      }
      const double got = oracle::mean_static_spearman(tr::borda_ordering(ranks, k), labels);
      std::vector<std::size_t> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      double best = -2;
      do {
        best = std::max(best, oracle::mean_static_spearman(perm, labels));
      } while (std::next_permutation(perm.begin(), perm.end()));
      CHECK(got >= best - 1e-12);
    }
  }
}

TEST_CASE("success accuracy filtering") {
  std::vector<std::vector<std::size_t>> ord = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}};
  std::vector<std::vector<bool>> solved = {{true, true, true}, {false, true, false}, {false, false, false}};
  auto r = tr::success_accuracy(ord, solved);
  CHECK(r.eligible == 1);
  CHECK(r.hits == 1);
  CHECK(r.accuracy == 1.0);
  CHECK(r.excluded_all_solved == 1);
  CHECK(r.excluded_none_solved == 1);
  std::vector<std::vector<bool>> none = {{true, true, true}, {false, false, false}, {true, true, true}};
  expect_code(ErrorCode::kNoEligibleInstances, [&] { tr::success_accuracy(ord, none); });
}

TEST_CASE("success accuracy matches a hand count on random tables") {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<std::size_t>> ord;
    std::vector<std::vector<bool>> solved;
    for (int i = 0; i < 10; ++i) {
      std::vector<std::size_t> o = {0, 1, 2, 3};
      rng.shuffle(o);
      ord.push_back(o);
      std::vector<bool> s(4);
      for (std::size_t v = 0; v < 4; ++v) s[v] = rng.index(2) == 1;
      solved.push_back(s);
    }
    int eligible = 0, hits = 0;
    for (int i = 0; i < 10; ++i) {
      int n = 0;
      for (bool b : solved[i]) n += b;
      if (n == 0 || n == 4) continue;
      ++eligible;
      hits += solved[i][ord[i][0]] ? 1 : 0;
    }
    if (eligible == 0) continue;
    CHECK(tr::success_accuracy(ord, solved).accuracy == static_cast<double>(hits) / eligible);
  }
}

TEST_CASE("topk examples and laws") {
  std::vector<std::vector<std::size_t>> ord = {{0, 2, 1}};
  std::vector<std::size_t> best = {2};
  CHECK(tr::topk_error(ord, best, 1) == 1.0);
  CHECK(tr::topk_error(ord, best, 2) == 0.0);
  CHECK(tr::topk_error(ord, best, 3) == 0.0);
  expect_code(ErrorCode::kBadK, [&] { tr::topk_error(ord, best, 0); });
  expect_code(ErrorCode::kBadK, [&] { tr::topk_error(ord, best, 4); });

  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + rng.index(8);
    tr::RandomSelector sel(k, rng.next_u64());
    std::vector<std::vector<std::size_t>> o;
    std::vector<std::size_t> b;
    for (int i = 0; i < 20; ++i) {
      o.push_back(sel.next());
      b.push_back(rng.index(k));
    }
    double prev = 1.0;
    for (std::size_t K = 1; K <= k; ++K) {
      const double e = tr::topk_error(o, b, K);
      CHECK(e <= prev);
      prev = e;
    }
    CHECK(prev == 0.0);
  }
}

TEST_CASE("random selector is reproducible and near half at k=10, K=5") {
  tr::RandomSelector a(10, 77), b(10, 77);
  for (int i = 0; i < 5; ++i) CHECK(a.next() == b.next());
  tr::RandomSelector sel(10, 123);
  Rng rng(9);
  std::vector<std::vector<std::size_t>> o;
  std::vector<std::size_t> best;
  for (int i = 0; i < 10000; ++i) {
    o.push_back(sel.next());
    best.push_back(rng.index(10));
  }
  CHECK(std::abs(tr::topk_error(o, best, 5) - 0.5) <= 0.02);
}

TEST_CASE("baselines") {
  std::vector<LabeledInstance> set = {
      instance({3, 1, 2}, {true, true, false}),
      instance({3, 2, 1}, {false, true, false}),
      instance({1, 2, 3}, {false, true, true}),
  };
  auto b = tr::fit_baselines(set);
  CHECK(b.iss_success == 1);
  CHECK(b.iss_topk == std::vector<std::size_t>{0, 2, 1});
  // Ranks: (1,3,2), (1,2,3), (3,2,1) -> Borda 2+0+... v0: 2+2+0=4, v1: 0+1+1=2, v2: 1+0+2=3.
  CHECK(b.iss_rank == std::vector<std::size_t>{0, 2, 1});
  CHECK(tr::success_ordering(1, 3) == std::vector<std::size_t>{1, 0, 2});
  expect_code(ErrorCode::kEmptySplit, [] { tr::fit_baselines(std::vector<LabeledInstance>{}); });
}

TEST_CASE("scheduler decays after three flat epochs") {
  tr::TrainConfig cfg;
  tr::PlateauScheduler s(cfg);
  std::vector<double> val = {5, 5, 5, 5};
  std::vector<bool> decays;
  for (double v : val) decays.push_back(s.observe(v).decayed);
  CHECK(decays == std::vector<bool>{false, false, false, true});
  CHECK(s.lr() == doctest::Approx(1e-4).epsilon(1e-12));
}

TEST_CASE("scheduler counter resets on strict improvement") {
  tr::TrainConfig cfg;
  tr::PlateauScheduler s(cfg);
  std::vector<double> val = {5, 6, 6, 4, 4, 4, 4.5, 3.9, 3.9, 3.9, 3.9};
  std::vector<std::size_t> decay_epochs;
  for (std::size_t e = 0; e < val.size(); ++e)
    if (s.observe(val[e]).decayed) decay_epochs.push_back(e + 1);
  CHECK(decay_epochs == std::vector<std::size_t>{7, 11});
}

TEST_CASE("scheduler stops once the rate falls below the floor") {
  tr::TrainConfig cfg;
  tr::PlateauScheduler s(cfg);
  int decays = 0;
  std::size_t epochs = 0;
  bool stopped = false;
  s.observe(1.0);
  while (!stopped && epochs < 100) {
    auto st = s.observe(1.0);
    ++epochs;
    if (st.decayed) ++decays;
    if (decays == 5) CHECK(s.lr() == doctest::Approx(1e-8).epsilon(1e-9));
    if (decays == 5) CHECK_FALSE(st.stop);
    stopped = st.stop;
  }
  CHECK(stopped);
  CHECK(decays == 6);
  CHECK(epochs == 18);
}

TEST_CASE("train config validation") {
  tr::TrainConfig c;
  CHECK_NOTHROW(c.validate());
  c.patience = 0;
  expect_code(ErrorCode::kConfig, [&] { c.validate(); });
  c = {};
  c.initial_lr = -1;
  expect_code(ErrorCode::kConfig, [&] { c.validate(); });
}

TEST_CASE("training is deterministic and reduces the loss") {
  auto task = vsel::fixture::planted_task(16, 5);
  auto val = vsel::fixture::planted_task(6, 6);
  model::ModelConfig mc;
  mc.vocab_size = task.vocab.size();
  mc.portfolio_size = 3;
  auto init = model::init_parameters(mc, task.portfolio, task.vocab.fingerprint(), 3);
  tr::TrainConfig cfg;
  cfg.epochs = 15;
  cfg.seed = 11;
  const auto before = init.clone();
  auto a = tr::train(task.instances, val.instances, init, cfg);
  auto b = tr::train(task.instances, val.instances, init, cfg);
  CHECK(a.history == b.history);
  CHECK(model::serialize_model(a.params) == model::serialize_model(b.params));
  CHECK(model::serialize_model(init) == model::serialize_model(before));
  CHECK(a.history.epochs.size() == 15);
  CHECK(a.history.epochs.back().train_loss < a.history.epochs.front().train_loss);
  // The returned parameters are the best-validation checkpoint.
  CHECK(tr::mean_loss(val.instances, a.params, 1.0) == a.history.best_val_loss);
  for (std::size_t e = 1; e < a.history.epochs.size(); ++e) {
    const double r = a.history.epochs[e].lr / a.history.epochs[e - 1].lr;
    CHECK((r == 1.0 || r == doctest::Approx(0.1)));
  }
  cfg.seed = 12;
  auto c = tr::train(task.instances, val.instances, init, cfg);
  CHECK_FALSE(c.history == a.history);
}

TEST_CASE("train rejects empty splits and label mismatches") {
  auto task = vsel::fixture::planted_task(4, 1);
  model::ModelConfig mc;
  mc.vocab_size = task.vocab.size();
  mc.portfolio_size = 3;
  auto init = model::init_parameters(mc, task.portfolio, "", 3);
  std::vector<LabeledInstance> none;
  expect_code(ErrorCode::kEmptySplit, [&] { tr::train(none, task.instances, init, {}); });
  expect_code(ErrorCode::kEmptySplit, [&] { tr::train(task.instances, none, init, {}); });
  auto broken = task.instances;
  broken[1].labels.pop_back();
  expect_code(ErrorCode::kLengthMismatch, [&] { tr::train(broken, task.instances, init, {}); });
}

TEST_CASE("evaluation report") {
  using vsel::graphio::PropertyKind;
  std::vector<LabeledInstance> test = {
      instance({3, 1, 2}, {true, false, false}, PropertyKind::kReachSafety),
      instance({1, 3, 2}, {false, true, true}, PropertyKind::kTermination),
      instance({1, 2, 3}, {true, true, true}, PropertyKind::kTermination),
  };
  std::vector<std::vector<double>> pred = {{0.9, 0.1, 0.5}, {0.2, 0.1, 0.3}, {1, 1, 1}};
  auto r = tr::evaluate(pred, test);
  CHECK(r.overall.instances == 3);
  REQUIRE(r.overall.success_accuracy.has_value());
  CHECK(*r.overall.success_accuracy == 1.0);
  CHECK(r.overall.success_eligible == 2);
  CHECK(r.overall.excluded_all_solved == 1);
  CHECK(r.overall.spearman_degenerate == 1);
  CHECK(r.overall.spearman_mean == doctest::Approx((1.0 - 0.5 + 0.0) / 3));
  CHECK(r.overall.topk_error.at(1) == doctest::Approx(2.0 / 3));
  CHECK(r.overall.topk_error.at(3) == 0.0);
  CHECK(r.per_property.size() == 2);
  CHECK(r.per_property.at("Termination").instances == 2);

  auto j = tr::to_json(r);
  CHECK(j["topk_error"]["1"].get<double>() == doctest::Approx(2.0 / 3));
  CHECK(j["per_property"].contains("ReachSafety"));

  std::vector<std::pair<std::string, tr::EvalReport>> both = {{"model", r}, {"other", r}};
  const std::string table = tr::format_table(both);
  CHECK(table.find("overall") == 0);
  CHECK(table.find("top-3 error") != std::string::npos);
  CHECK(table.find("Termination") != std::string::npos);
  expect_code(ErrorCode::kLengthMismatch, [&] { tr::evaluate(std::vector<std::vector<double>>{}, test); });
}

TEST_CASE("parallel prediction matches serial") {
  auto task = vsel::fixture::planted_task(20, 2);
  model::ModelConfig mc;
  mc.vocab_size = task.vocab.size();
  mc.portfolio_size = 3;
  auto params = model::init_parameters(mc, task.portfolio, "", 3);
  CHECK(tr::predict_all(task.instances, params, 1) == tr::predict_all(task.instances, params, 4));
}
