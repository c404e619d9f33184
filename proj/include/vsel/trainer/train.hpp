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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsel/graphio/labels.hpp"
#include "vsel/model/model.hpp"

namespace vsel::trainer {

struct TrainConfig {
  std::size_t epochs = 50;
  double initial_lr = 1e-3;
  std::size_t patience = 3;
  double decay = 0.1;
  double min_lr = 1e-8;
  double margin = 1.0;
  std::uint64_t seed = 0;

  /// Throws Error(kConfig) unless everything is positive and decay < 1.
  void validate() const;
};

enum class StopReason : std::uint8_t { kEpochCap, kLrFloor };
std::string_view stop_reason_name(StopReason r);

/// Plateau rule: a strictly lower validation loss resets the counter;
/// `patience` consecutive non-improving epochs multiply lr by `decay` and
/// reset the counter. Once lr drops below min_lr the run is over.
class PlateauScheduler {
 public:
  explicit PlateauScheduler(const TrainConfig& cfg);

  struct Step {
    bool improved = false;
    bool decayed = false;
    bool stop = false;
  };
  Step observe(double val_loss);

  double lr() const { return lr_; }
  double best() const { return best_; }
  std::size_t bad_epochs() const { return bad_; }

 private:
  std::size_t patience_;
  double decay_;
  double min_lr_;
  double lr_;
  double best_;
  std::size_t bad_ = 0;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double lr = 0.0;  // in effect during the epoch

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  StopReason stop = StopReason::kEpochCap;
  std::size_t best_epoch = 0;
  double best_val_loss = 0.0;

  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

struct TrainResult {
  model::ModelParameters params;  // best-validation checkpoint
  TrainHistory history;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Mean margin loss of the current parameters over a set.
double mean_loss(std::span<const graphio::LabeledInstance> set, const model::ModelParameters& params,
                 double margin);

/// One Adam step per instance, visiting the training set in a seeded
/// shuffled order each epoch. `init` is left untouched. Throws EmptySplit on
/// an empty set and LengthMismatch when label counts differ from the
/// portfolio.
TrainResult train(std::span<const graphio::LabeledInstance> train_set,
                  std::span<const graphio::LabeledInstance> val_set,
                  const model::ModelParameters& init, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

}  // namespace vsel::trainer
