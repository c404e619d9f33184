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

#include "vsel/graphio/split.hpp"

#include <algorithm>
#include <cmath>

#include "vsel/error.hpp"
#include "vsel/random.hpp"

namespace vsel::graphio {

std::array<std::size_t, 3> apportion(std::size_t n, const SplitRatios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.val, ratios.test};
  std::array<std::size_t, 3> parts{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    double q = r[i] * static_cast<double>(n);
    if (std::abs(q - std::round(q)) < 1e-9) q = std::round(q);
    parts[i] = static_cast<std::size_t>(std::floor(q));
    frac[i] = q - std::floor(q);
    assigned += parts[i];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % 3, ++assigned) ++parts[order[k]];
  return parts;
}

DatasetSplit split_dataset(std::span<const PropertyKind> instance_properties,
                           const SplitRatios& ratios, std::uint64_t seed) {
  if (!(ratios.train > 0 && ratios.val > 0 && ratios.test > 0) ||
      std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "split ratios must be positive and sum to 1");
  }
  DatasetSplit split;
  for (std::size_t p = 0; p < kPropertyCount; ++p) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < instance_properties.size(); ++i) {
      if (encode(instance_properties[i]) == p) members.push_back(i);
    }
    if (members.empty()) continue;
    if (members.size() < 3) {
      split.warnings.push_back("EmptyStratum: property " +
                               std::string(property_name(property_from_index(p))) + " has only " +
                               std::to_string(members.size()) + " instance(s)");
    }
    Rng rng(seed * 0x9E3779B97F4A7C15ULL + p + 1);
    rng.shuffle(members);
    auto sizes = apportion(members.size(), ratios);
    auto it = members.begin();
    split.train.insert(split.train.end(), it, it + sizes[0]);
    it += sizes[0];
    split.val.insert(split.val.end(), it, it + sizes[1]);
    it += sizes[1];
    split.test.insert(split.test.end(), it, members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace vsel::graphio
