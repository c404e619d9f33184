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

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vsel/error.hpp"
#include "vsel/tensor/adam.hpp"
#include "vsel/tensor/grad_check.hpp"
#include "vsel/tensor/tensor.hpp"

using vsel::Error;
using vsel::ErrorCode;
using vsel::Rng;
using vsel::tensor::Adam;
using vsel::tensor::grad_check;
using vsel::tensor::Matrix;
using vsel::tensor::Tape;
using vsel::tensor::Tensor;

namespace {

// Reduces any tensor to a scalar through fixed random weights so every
// output entry contributes a distinct gradient.
Tensor weighted_sum(Tape& t, const Tensor& y, std::uint64_t seed) {
  Rng rng(seed);
  Tensor w = Tensor::constant(vsel::oracle::random_matrix(rng, y.rows(), y.cols()));
  return t.sum_all(t.elementwise_mul(y, w));
}

}  // namespace

TEST_CASE("softmax of equal logits is uniform") {
  Tape t;
  Tensor y = t.softmax_rows(Tensor::constant(Matrix::from_rows({{0, 0}})));
  CHECK(y.value()(0, 0) == 0.5);
  CHECK(y.value()(0, 1) == 0.5);
}

TEST_CASE("softmax rows sum to one") {
  Rng rng(3);
  Tape t;
  Tensor y = t.softmax_rows(Tensor::constant(vsel::oracle::random_matrix(rng, 7, 9, -30, 30)));
  for (std::size_t r = 0; r < 7; ++r) {
    double s = 0;
    for (std::size_t c = 0; c < 9; ++c) s += y.value()(r, c);
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("leaky relu with slope 0.2") {
  Tape t;
  Tensor y = t.leaky_relu(Tensor::constant(Matrix::from_rows({{-1, 2}})), 0.2);
  CHECK(y.value()(0, 0) == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(y.value()(0, 1) == 2.0);
}

TEST_CASE("matmul agrees with the naive triple loop") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = vsel::oracle::random_matrix(rng, 2, 3);
    Matrix b = vsel::oracle::random_matrix(rng, 3, 1);
    Tape t;
    Matrix got = t.matmul(Tensor::constant(a), Tensor::constant(b)).value();
    Matrix want = vsel::oracle::naive_matmul(a, b);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-12);
  }
}

TEST_CASE("shape errors name the primitive and both shapes") {
  Tape t;
  Tensor a = Tensor::constant(Matrix(2, 3));
  Tensor b = Tensor::constant(Matrix(2, 3));
  try {
    t.matmul(a, b);
    FAIL("expected ShapeError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShape);
    const std::string msg = e.what();
    CHECK(msg.find("matmul") != std::string::npos);
    CHECK(msg.find("2x3") != std::string::npos);
  }
  CHECK_THROWS_AS(t.add(a, Tensor::constant(Matrix(3, 3))), vsel::ShapeError);
  CHECK_THROWS_AS(t.elementwise_mul(a, Tensor::constant(Matrix(1, 2))), vsel::ShapeError);
  Tensor c = Tensor::constant(Matrix(3, 2));
  Tensor parts[] = {a, c};
  CHECK_THROWS_AS(t.concat_rows(parts), vsel::ShapeError);
}

TEST_CASE("row and column broadcasting in add") {
  Tape t;
  Tensor a = Tensor::constant(Matrix::from_rows({{1, 2}, {3, 4}}));
  Matrix r = t.add(a, Tensor::constant(Matrix::from_rows({{10, 20}}))).value();
  CHECK(r == Matrix::from_rows({{11, 22}, {13, 24}}));
  Matrix c = t.add(a, Tensor::constant(Matrix::from_rows({{10}, {20}}))).value();
  CHECK(c == Matrix::from_rows({{11, 12}, {23, 24}}));
}

TEST_CASE("backward of sum is all ones") {
  Tensor x = Tensor::parameter(Matrix::from_rows({{1, -2}, {3.5, 0}}));
  Tape t;
  t.backward(t.sum_all(x));
  CHECK(x.grad() == Matrix(2, 2, 1.0));
}

TEST_CASE("backward of sum of squares is 2x") {
  Tensor x = Tensor::parameter(Matrix::from_rows({{1, -2}, {3.5, 0.25}}));
  Tape t;
  t.backward(t.sum_all(t.elementwise_mul(x, x)));
  for (std::size_t i = 0; i < 4; ++i) CHECK(x.grad()[i] == 2 * x.value()[i]);
}

TEST_CASE("repeated backward accumulates") {
  Tensor x = Tensor::parameter(Matrix::from_rows({{1, 2}}));
  Tape t;
  Tensor loss = t.sum_all(t.scalar_mul(x, 3.0));
  t.backward(loss);
  t.backward(loss);
  CHECK(x.grad() == Matrix(1, 2, 6.0));
}

TEST_CASE("backward rejects non-scalar loss") {
  Tensor x = Tensor::parameter(Matrix(2, 2, 1.0));
  Tape t;
  Tensor y = t.scalar_mul(x, 2.0);
  try {
    t.backward(y);
    FAIL("expected NotScalar");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotScalar);
  }
}

TEST_CASE("constants are not recorded") {
  Tape t;
  t.matmul(Tensor::constant(Matrix(2, 2, 1.0)), Tensor::constant(Matrix(2, 2, 1.0)));
  CHECK(t.size() == 0);
  t.scalar_mul(Tensor::parameter(Matrix(1, 1, 1.0)), 2.0);
  CHECK(t.size() == 1);
}

TEST_CASE("grad_check of sum has zero error") {
  // Dyadic inputs and step keep every sum exact.
  Tensor x = Tensor::parameter(Matrix::from_rows({{0.5, -1.25}, {0.75, 0.125}}));
  auto rep =
      grad_check([](Tape& t, const Tensor& v) { return t.sum_all(v); }, x, 0x1p-17, 1e-4);
  CHECK(rep.max_rel_error == 0.0);
  CHECK(rep.passed);
  CHECK(rep.checked == 4);
}

TEST_CASE("grad_check of a constant function") {
  Rng rng(5);
  Tensor x = Tensor::parameter(vsel::oracle::random_matrix(rng, 3, 4));
  auto rep = grad_check([](Tape& t, const Tensor& v) { return t.sum_all(t.softmax_rows(v)); }, x,
                        1e-5, 1e-4);
  CHECK(rep.passed);
  CHECK(rep.max_abs_error < 1e-9);
}

TEST_CASE("grad_check reports a wrong gradient") {
  // sum_all applied to a value the function then squares outside the tape:
  // the tape sees d/dx sum = 1 but the real function is sum^2.
  Tensor x = Tensor::parameter(Matrix::from_rows({{1.0, 2.0}}));
  auto rep = grad_check(
      [](Tape& t, const Tensor& v) {
        Tensor s = t.sum_all(v);
        return t.add_scalar(s, s.value()(0, 0) * s.value()(0, 0) - s.value()(0, 0));
      },
      x, 1e-5, 1e-4);
  CHECK_FALSE(rep.passed);
}

TEST_CASE("every primitive passes grad_check on random shapes") {
  using Fn = std::function<Tensor(Tape&, const Tensor&, Rng&, std::size_t, std::size_t)>;
  struct Case {
    const char* name;
    Fn fn;
  };
  const double slope = 0.2;
  std::vector<Case> cases = {
      {"matmul",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t, std::size_t c) {
         return t.matmul(x, Tensor::constant(vsel::oracle::random_matrix(rng, c, 3)));
       }},
      {"matmul_rhs",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t) {
         return t.matmul(Tensor::constant(vsel::oracle::random_matrix(rng, 2, r)), x);
       }},
      {"add",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t c) {
         return t.add(x, Tensor::constant(vsel::oracle::random_matrix(rng, r, c)));
       }},
      {"add_row_broadcast",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t, std::size_t) {
         return t.add(Tensor::constant(vsel::oracle::random_matrix(rng, 3, x.cols())),
                      t.sum_rows(x));
       }},
      {"add_col_broadcast",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t c) {
         Tensor col = t.matmul(x, Tensor::constant(Matrix(c, 1, 1.0)));
         return t.add(Tensor::constant(vsel::oracle::random_matrix(rng, r, 2)), col);
       }},
      {"sub",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t c) {
         return t.sub(Tensor::constant(vsel::oracle::random_matrix(rng, r, c)), x);
       }},
      {"scalar_mul",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t, std::size_t) {
         return t.scalar_mul(x, rng.uniform(-2, 2));
       }},
      {"elementwise_mul",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t c) {
         return t.elementwise_mul(x, Tensor::constant(vsel::oracle::random_matrix(rng, r, c)));
       }},
      {"elementwise_mul_self", [](Tape& t, const Tensor& x, Rng&, std::size_t,
                                  std::size_t) { return t.elementwise_mul(x, x); }},
      {"elementwise_mul_broadcast",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t, std::size_t) {
         Tensor a = Tensor::constant(vsel::oracle::random_matrix(rng, 4, x.cols()));
         return t.elementwise_mul(a, t.sum_rows(x));
       }},
      {"leaky_relu", [slope](Tape& t, const Tensor& x, Rng&, std::size_t,
                             std::size_t) { return t.leaky_relu(x, slope); }},
      {"sigmoid",
       [](Tape& t, const Tensor& x, Rng&, std::size_t, std::size_t) { return t.sigmoid(x); }},
      {"log",
       [](Tape& t, const Tensor& x, Rng&, std::size_t, std::size_t) {
         return t.log(t.add_scalar(t.elementwise_mul(x, x), 0.5));
       }},
      {"softmax_rows", [](Tape& t, const Tensor& x, Rng&, std::size_t,
                          std::size_t) { return t.softmax_rows(x); }},
      {"sum_rows",
       [](Tape& t, const Tensor& x, Rng&, std::size_t, std::size_t) { return t.sum_rows(x); }},
      {"transpose",
       [](Tape& t, const Tensor& x, Rng&, std::size_t, std::size_t) { return t.transpose(x); }},
      {"concat_rows",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t, std::size_t c) {
         Tensor parts[] = {x, Tensor::constant(vsel::oracle::random_matrix(rng, 2, c)), x};
         return t.concat_rows(parts);
       }},
      {"concat_cols",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t) {
         Tensor parts[] = {Tensor::constant(vsel::oracle::random_matrix(rng, r, 2)), x, x};
         return t.concat_cols(parts);
       }},
      {"gather_rows",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t) {
         std::vector<std::uint32_t> idx(r + 3);
         for (auto& i : idx) i = static_cast<std::uint32_t>(rng.index(r));
         return t.gather_rows(x, idx);
       }},
      {"scatter_add_rows",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t) {
         std::vector<std::uint32_t> idx(r);
         for (auto& i : idx) i = static_cast<std::uint32_t>(rng.index(3));
         return t.scatter_add_rows(x, idx, 3);
       }},
      {"segment_softmax",
       [](Tape& t, const Tensor& x, Rng& rng, std::size_t r, std::size_t c) {
         Tensor col = t.matmul(x, Tensor::constant(Matrix(c, 1, 1.0)));
         std::vector<std::uint32_t> seg(r);
         for (auto& s : seg) s = static_cast<std::uint32_t>(rng.index(2));
         return t.segment_softmax(col, seg, 2);
       }},
  };

  for (const Case& cs : cases) {
    CAPTURE(cs.name);
    Rng shapes(0xC0FFEE);
    int failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t r = 1 + shapes.index(4);
      const std::size_t c = 1 + shapes.index(4);
      const std::uint64_t seed = shapes.next_u64();
      Tensor x = Tensor::parameter(vsel::oracle::random_matrix(shapes, r, c));
      auto rep = grad_check(
          [&](Tape& t, const Tensor& v) {
            Rng rng(seed);  // same constants on every evaluation
            return weighted_sum(t, cs.fn(t, v, rng, r, c), seed + 1);
          },
          x, 1e-5, 1e-4);
      if (!rep.passed) ++failures;
      worst = std::max(worst, rep.max_rel_error);
    }
    CAPTURE(worst);
    CHECK(failures == 0);
  }
}

TEST_CASE("identical inputs give bit-identical outputs") {
  auto run = [] {
    Rng rng(99);
    Tensor a = Tensor::parameter(vsel::oracle::random_matrix(rng, 6, 5));
    Tensor b = Tensor::constant(vsel::oracle::random_matrix(rng, 5, 4));
    Tape t;
    Tensor loss = t.sum_all(t.softmax_rows(t.leaky_relu(t.matmul(a, b), 0.2)));
    t.backward(loss);
    return std::make_pair(loss.item(), a.grad());
  };
  auto [l1, g1] = run();
  auto [l2, g2] = run();
  CHECK(l1 == l2);
  CHECK(g1 == g2);
}

TEST_CASE("adam minimizes a quadratic") {
  Tensor x = Tensor::parameter(Matrix::from_rows({{3.0, -2.0}}));
  Adam opt({x}, 0.1);
  for (int i = 0; i < 500; ++i) {
    opt.zero_grad();
    Tape t;
    t.backward(t.sum_all(t.elementwise_mul(x, x)));
    opt.step();
  }
  CHECK(std::abs(x.value()(0, 0)) < 1e-2);
  CHECK(std::abs(x.value()(0, 1)) < 1e-2);
}
