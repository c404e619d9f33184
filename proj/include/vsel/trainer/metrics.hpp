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
#include <span>
#include <vector>

#include "vsel/random.hpp"

namespace vsel::trainer {

/// 1-based ranks by ascending value; tied values share their average rank.
std::vector<double> average_ranks(std::span<const double> x);

struct SpearmanResult {
  double rho = 0.0;
  bool degenerate = false;  // a constant input; rho is then 0
};

/// 1 - 6 sum d^2 / (n (n^2 - 1)) over average ranks. Throws LengthMismatch
/// for unequal lengths or n < 2.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

/// Rank vector (1 = best) from label values, higher is better; ties go to
/// the lower index.
std::vector<std::size_t> ranks_from_labels(std::span<const double> labels);

/// Ranks (1 = first) of an ordering: ranks[ordering[p]] = p + 1.
std::vector<std::size_t> ranks_from_ordering(std::span<const std::size_t> ordering);

/// Scores that reproduce an ordering: k - position.
std::vector<double> scores_from_ordering(std::span<const std::size_t> ordering);

/// Lowest index among the maxima.
std::size_t best_verifier(std::span<const double> labels);

/// Borda(v) = sum over instances of k - r_v; descending count, ties by
/// ascending index. Throws InvalidRanking when a vector is not a
/// permutation of 1..k.
std::vector<std::size_t> borda_ordering(std::span<const std::vector<std::size_t>> rank_vectors,
                                        std::size_t k);

struct SuccessResult {
  double accuracy = 0.0;
  std::size_t eligible = 0;
  std::size_t hits = 0;
  std::size_t excluded_none_solved = 0;
  std::size_t excluded_all_solved = 0;
};

/// Top-1 hit rate over instances solved by some but not all verifiers.
/// Throws NoEligibleInstances when nothing remains after filtering.
SuccessResult success_accuracy(std::span<const std::vector<std::size_t>> orderings,
                               std::span<const std::vector<bool>> solved);

/// Fraction of instances whose best verifier is not among the first K
/// predicted. Throws BadK unless 1 <= K <= portfolio size.
double topk_error(std::span<const std::vector<std::size_t>> orderings,
                  std::span<const std::size_t> best, std::size_t K);

/// Seeded uniform orderings, one per call.
class RandomSelector {
 public:
  RandomSelector(std::size_t k, std::uint64_t seed) : k_(k), rng_(seed) {}
  std::vector<std::size_t> next();

 private:
  std::size_t k_;
  Rng rng_;
};

}  // namespace vsel::trainer
