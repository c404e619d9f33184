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
#include <functional>
#include <span>

#include "vsel/tensor/tensor.hpp"

namespace vsel::tensor {

struct GradCheckReport {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t worst_param = 0;  // position in the parameter list
  std::size_t worst_entry = 0;  // flat index inside that parameter
  std::size_t checked = 0;
  bool passed = true;
};

// Relative error of one component is |a - n| / max(|a|, |n|, floor). The
// floor keeps near-zero gradients from blowing up the ratio.
inline constexpr double kGradCheckFloor = 1e-3;

using ScalarFn = std::function<Tensor(Tape&)>;

/// Central differences for every entry of every parameter, against one
/// backward pass. f must read the parameters' current values each call.
/// Parameter values are restored and their grads zeroed on return.
GradCheckReport grad_check(const ScalarFn& f, std::span<Tensor> params, double step,
                           double tolerance, double floor = kGradCheckFloor);

/// Single-input form: f(tape, x).
GradCheckReport grad_check(const std::function<Tensor(Tape&, const Tensor&)>& f, Tensor x,
                           double step, double tolerance, double floor = kGradCheckFloor);

}  // namespace vsel::tensor
