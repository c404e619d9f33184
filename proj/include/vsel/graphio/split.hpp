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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vsel/graphio/program_graph.hpp"

namespace vsel::graphio {

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

/// Instance indices of a three-way split.
struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
  std::vector<std::string> warnings;  // EmptyStratum notices
};

/// Largest-remainder apportionment of n items; the parts always sum to n.
/// Ties in the fractional parts go to the earlier part (train, val, test).
std::array<std::size_t, 3> apportion(std::size_t n, const SplitRatios& ratios);

/// Stratified by property: each property's instances are shuffled with a
/// seed-derived stream and cut by apportion(). Throws on ratios that are not
/// positive or do not sum to 1 within 1e-9.
DatasetSplit split_dataset(std::span<const PropertyKind> instance_properties,
                           const SplitRatios& ratios, std::uint64_t seed);

}  // namespace vsel::graphio
