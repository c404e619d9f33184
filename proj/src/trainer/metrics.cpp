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

#include "vsel/trainer/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "vsel/error.hpp"

namespace vsel::trainer {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = static_cast<double>(i + j) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kLengthMismatch, "spearman: lengths " + std::to_string(x.size()) + " and " +
                                                std::to_string(y.size()) + " (need equal, >= 2)");
  }
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v[0]; });
  };
  if (constant(x) || constant(y)) return {0.0, true};
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  double d2 = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double n = static_cast<double>(x.size());
  const double rho = 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
  return {std::clamp(rho, -1.0, 1.0), false};
}

std::vector<std::size_t> ranks_from_ordering(std::span<const std::size_t> ordering) {
  std::vector<std::size_t> r(ordering.size());
  for (std::size_t p = 0; p < ordering.size(); ++p) r.at(ordering[p]) = p + 1;
  return r;
}

std::vector<std::size_t> ranks_from_labels(std::span<const double> labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return labels[a] > labels[b]; });
  return ranks_from_ordering(order);
}

std::vector<double> scores_from_ordering(std::span<const std::size_t> ordering) {
  std::vector<double> s(ordering.size());
  for (std::size_t p = 0; p < ordering.size(); ++p) {
    s.at(ordering[p]) = static_cast<double>(ordering.size() - p);
  }
  return s;
}

std::size_t best_verifier(std::span<const double> labels) {
  if (labels.empty()) throw Error(ErrorCode::kLengthMismatch, "best_verifier: no labels");
  return static_cast<std::size_t>(std::max_element(labels.begin(), labels.end()) - labels.begin());
}

std::vector<std::size_t> borda_ordering(std::span<const std::vector<std::size_t>> rank_vectors,
                                        std::size_t k) {
  std::vector<double> borda(k, 0.0);
  for (std::size_t i = 0; i < rank_vectors.size(); ++i) {
    const auto& r = rank_vectors[i];
    std::vector<bool> seen(k + 1, false);
    bool ok = r.size() == k;
    for (std::size_t v = 0; ok && v < k; ++v) {
      ok = r[v] >= 1 && r[v] <= k && !seen[r[v]];
      if (ok) seen[r[v]] = true;
    }
    if (!ok) {
      throw Error(ErrorCode::kInvalidRanking,
                  "borda_ordering: instance " + std::to_string(i) + " is not a permutation of 1.." +
                      std::to_string(k));
    }
    for (std::size_t v = 0; v < k; ++v) borda[v] += static_cast<double>(k - r[v]);
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return borda[a] > borda[b]; });
  return order;
}

SuccessResult success_accuracy(std::span<const std::vector<std::size_t>> orderings,
                               std::span<const std::vector<bool>> solved) {
  if (orderings.size() != solved.size()) {
    throw Error(ErrorCode::kLengthMismatch, "success_accuracy: " + std::to_string(orderings.size()) +
                                                " predictions for " + std::to_string(solved.size()) +
                                                " instances");
  }
  SuccessResult res;
  for (std::size_t i = 0; i < solved.size(); ++i) {
    const auto n = static_cast<std::size_t>(std::count(solved[i].begin(), solved[i].end(), true));
    if (n == 0) {
      ++res.excluded_none_solved;
    } else if (n == solved[i].size()) {
      ++res.excluded_all_solved;
    } else {
      ++res.eligible;
      if (!orderings[i].empty() && solved[i].at(orderings[i][0])) ++res.hits;
    }
  }
  if (res.eligible == 0) {
    throw Error(ErrorCode::kNoEligibleInstances,
                "success_accuracy: every instance is solved by none or by all verifiers");
  }
  res.accuracy = static_cast<double>(res.hits) / static_cast<double>(res.eligible);
  return res;
}

double topk_error(std::span<const std::vector<std::size_t>> orderings,
                  std::span<const std::size_t> best, std::size_t K) {
  if (orderings.size() != best.size()) {
    throw Error(ErrorCode::kLengthMismatch, "topk_error: " + std::to_string(orderings.size()) +
                                                " predictions for " + std::to_string(best.size()) +
                                                " labels");
  }
  if (orderings.empty()) return 0.0;
  std::size_t misses = 0;
  for (std::size_t i = 0; i < orderings.size(); ++i) {
    const auto& o = orderings[i];
    if (K < 1 || K > o.size()) {
      throw Error(ErrorCode::kBadK, "topk_error: K=" + std::to_string(K) + " outside 1.." +
                                        std::to_string(o.size()));
    }
    if (std::find(o.begin(), o.begin() + static_cast<std::ptrdiff_t>(K), best[i]) ==
        o.begin() + static_cast<std::ptrdiff_t>(K)) {
      ++misses;
    }
  }
  return static_cast<double>(misses) / static_cast<double>(orderings.size());
}

std::vector<std::size_t> RandomSelector::next() {
  std::vector<std::size_t> o(k_);
  std::iota(o.begin(), o.end(), 0);
  rng_.shuffle(o);
  return o;
}

}  // namespace vsel::trainer
