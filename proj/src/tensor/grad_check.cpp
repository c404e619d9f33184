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

#include "vsel/tensor/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vsel::tensor {

namespace {

double evaluate(const ScalarFn& f) {
  Tape tape;
  return f(tape).item();
}

}  // namespace

GradCheckReport grad_check(const ScalarFn& f, std::span<Tensor> params, double step,
                           double tolerance, double floor) {
  for (Tensor& p : params) p.zero_grad();
  {
    Tape tape;
    Tensor loss = f(tape);
    tape.backward(loss);
  }
  std::vector<Matrix> analytic;
  analytic.reserve(params.size());
  for (Tensor& p : params) analytic.push_back(p.grad());

  GradCheckReport report;
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    Matrix& v = params[pi].mutable_value();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x0 = v[i];
      const double xp = x0 + step;
      const double xm = x0 - step;
      v[i] = xp;
      const double fp = evaluate(f);
      v[i] = xm;
      const double fm = evaluate(f);
      v[i] = x0;
      // Divide by the step actually taken after rounding.
      const double numeric = (fp - fm) / (xp - xm);
      const double a = analytic[pi][i];
      const double abs_err = std::abs(a - numeric);
      const double rel_err = abs_err / std::max({std::abs(a), std::abs(numeric), floor});
      report.max_abs_error = std::max(report.max_abs_error, abs_err);
      if (rel_err > report.max_rel_error) {
        report.max_rel_error = rel_err;
        report.worst_param = pi;
        report.worst_entry = i;
      }
      ++report.checked;
    }
  }
  for (Tensor& p : params) p.zero_grad();
  report.passed = report.max_rel_error < tolerance;
  return report;
}

GradCheckReport grad_check(const std::function<Tensor(Tape&, const Tensor&)>& f, Tensor x,
                           double step, double tolerance, double floor) {
  const bool was_param = x.requires_grad();
  Tensor leaf = was_param ? x : Tensor::parameter(x.value());
  Tensor params[] = {leaf};
  return grad_check([&](Tape& t) { return f(t, leaf); }, params, step, tolerance, floor);
}

}  // namespace vsel::tensor
