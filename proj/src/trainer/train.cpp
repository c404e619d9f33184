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

#include "vsel/trainer/train.hpp"

#include <limits>
#include <numeric>

#include "vsel/error.hpp"
#include "vsel/random.hpp"
#include "vsel/tensor/adam.hpp"

namespace vsel::trainer {

void TrainConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::kConfig, "train config: " + what); };
  if (epochs == 0) bad("epochs must be positive");
  if (!(initial_lr > 0.0)) bad("initial_lr must be positive");
  if (patience == 0) bad("patience must be >= 1");
  if (!(decay > 0.0 && decay < 1.0)) bad("decay must lie in (0, 1)");
  if (!(min_lr > 0.0)) bad("min_lr must be positive");
  if (!(margin > 0.0)) bad("margin must be positive");
}

std::string_view stop_reason_name(StopReason r) {
  return r == StopReason::kLrFloor ? "lr_floor" : "epoch_cap";
}

PlateauScheduler::PlateauScheduler(const TrainConfig& cfg)
    : patience_(cfg.patience),
      decay_(cfg.decay),
      min_lr_(cfg.min_lr),
      lr_(cfg.initial_lr),
      best_(std::numeric_limits<double>::infinity()) {}

PlateauScheduler::Step PlateauScheduler::observe(double val_loss) {
  Step s;
  if (val_loss < best_) {
    best_ = val_loss;
    bad_ = 0;
    s.improved = true;
    return s;
  }
  if (++bad_ < patience_) return s;
  bad_ = 0;
  lr_ *= decay_;
  s.decayed = true;
  // 1e-3 * 0.1^5 lands a hair off 1e-8 in binary; allow for that.
  s.stop = lr_ < min_lr_ * (1.0 - 1e-6);
  return s;
}

namespace {

void check_set(std::span<const graphio::LabeledInstance> set, std::size_t k, const char* name) {
  if (set.empty()) throw Error(ErrorCode::kEmptySplit, std::string(name) + " set is empty");
  for (const auto& inst : set) {
    if (inst.labels.size() != k) {
      throw Error(ErrorCode::kLengthMismatch, std::string(name) + " instance '" + inst.graph.id +
                                                  "' has " + std::to_string(inst.labels.size()) +
                                                  " labels for a portfolio of " + std::to_string(k));
    }
  }
}

}  // namespace

double mean_loss(std::span<const graphio::LabeledInstance> set, const model::ModelParameters& params,
                 double margin) {
  if (set.empty()) return 0.0;
  double total = 0.0;
  for (const auto& inst : set) {
    total += model::margin_rank_loss(model::predict(inst.graph, params).scores, inst.labels, margin);
  }
  return total / static_cast<double>(set.size());
}

TrainResult train(std::span<const graphio::LabeledInstance> train_set,
                  std::span<const graphio::LabeledInstance> val_set,
                  const model::ModelParameters& init, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  const std::size_t k = init.portfolio.size();
  check_set(train_set, k, "training");
  check_set(val_set, k, "validation");

  model::ModelParameters params = init.clone();
  TrainResult out{init.clone(), {}};
  tensor::Adam adam(params.tensors(), cfg.initial_lr);
  PlateauScheduler sched(cfg);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  out.history.best_val_loss = std::numeric_limits<double>::infinity();
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    EpochRecord rec;
    rec.epoch = epoch;
    rec.lr = sched.lr();
    adam.set_lr(sched.lr());
    rng.shuffle(order);
    double total = 0.0;
    for (std::size_t i : order) {
      const auto& inst = train_set[i];
      tensor::Tape tape;
      tensor::Tensor loss =
          model::margin_rank_loss(tape, model::forward(tape, inst.graph, params), inst.labels, cfg.margin);
      total += loss.item();
      if (!loss.requires_grad()) continue;  // all labels tied: nothing to learn
      adam.zero_grad();
      tape.backward(loss);
      adam.step();
    }
    rec.train_loss = total / static_cast<double>(train_set.size());
    rec.val_loss = mean_loss(val_set, params, cfg.margin);
    out.history.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);

    const auto step = sched.observe(rec.val_loss);
    if (step.improved) {
      out.params.assign_values(params);
      out.history.best_epoch = epoch;
      out.history.best_val_loss = rec.val_loss;
    }
    if (step.stop) {
      out.history.stop = StopReason::kLrFloor;
      break;
    }
  }
  return out;
}

}  // namespace vsel::trainer
