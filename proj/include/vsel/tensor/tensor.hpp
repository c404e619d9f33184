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
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace vsel::tensor {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix column(std::span<const double> values);
  static Matrix row(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void fill(double v);
  Matrix& operator+=(const Matrix& other);

  std::string shape_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class Tape;

/// Shared handle to a value on (or off) a tape. Copies alias the same
/// storage, so a parameter updated in place is seen by every holder.
class Tensor {
 public:
  Tensor() = default;

  static Tensor constant(Matrix value);
  static Tensor parameter(Matrix value);  // leaf with requires_grad

  bool defined() const { return impl_ != nullptr; }
  const Matrix& value() const { return impl_->value; }
  Matrix& mutable_value() { return impl_->value; }
  /// Gradient accumulator; empty until a backward pass touches it.
  const Matrix& grad() const { return impl_->grad; }
  Matrix& mutable_grad() { return impl_->grad; }
  bool requires_grad() const { return impl_->requires_grad; }
  void zero_grad();

  std::size_t rows() const { return impl_->value.rows(); }
  std::size_t cols() const { return impl_->value.cols(); }
  double item() const;  // value of a 1x1 tensor

  // Storage; public only so the tape's kernels can name it.
  struct Impl {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
  };

 private:
  friend class Tape;
  explicit Tensor(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

/// Records primitive applications in execution order and replays their
/// local gradients in reverse. A primitive is recorded only when one of its
/// inputs requires a gradient. Not thread-safe; use one tape per thread.
///
/// Vector broadcasting: the second operand of add / elementwise_mul may be a
/// 1 x cols row or a rows x 1 column; nothing more general.
class Tape {
 public:
  Tape() = default;
  /// recording = false gives an inference tape: values only, no closures.
  explicit Tape(bool recording) : recording_(recording) {}

  Tensor matmul(const Tensor& a, const Tensor& b);
  Tensor add(const Tensor& a, const Tensor& b);
  Tensor sub(const Tensor& a, const Tensor& b);
  Tensor add_scalar(const Tensor& a, double s);
  Tensor scalar_mul(const Tensor& a, double s);
  Tensor elementwise_mul(const Tensor& a, const Tensor& b);
  Tensor leaky_relu(const Tensor& a, double slope);
  Tensor sigmoid(const Tensor& a);
  Tensor log(const Tensor& a);
  Tensor softmax_rows(const Tensor& a);
  Tensor sum_rows(const Tensor& a);  // column sums, 1 x cols
  Tensor sum_all(const Tensor& a);   // 1 x 1
  Tensor transpose(const Tensor& a);
  Tensor concat_rows(std::span<const Tensor> parts);
  Tensor concat_cols(std::span<const Tensor> parts);

  // Sparse message-passing helpers over edge lists.
  Tensor gather_rows(const Tensor& a, std::span<const std::uint32_t> index);
  Tensor scatter_add_rows(const Tensor& a, std::span<const std::uint32_t> index,
                          std::size_t out_rows);
  /// Softmax of a column vector within groups sharing segment[k].
  Tensor segment_softmax(const Tensor& a, std::span<const std::uint32_t> segment,
                         std::size_t num_segments);

  /// Seeds d(loss)/d(loss) = 1 and propagates to every requires_grad leaf,
  /// accumulating into existing leaf gradients. Throws NotScalar unless
  /// loss is 1 x 1.
  void backward(const Tensor& loss);

  std::size_t size() const { return records_.size(); }
  void clear() { records_.clear(); }

 private:
  using Impl = Tensor::Impl;
  struct Record {
    std::shared_ptr<Impl> output;
    std::function<void()> backward;
  };
  Tensor record(Matrix value, std::vector<std::shared_ptr<Impl>> inputs,
                std::function<void(const std::shared_ptr<Impl>&)> backward);

  std::vector<Record> records_;
  bool recording_ = true;
};

}  // namespace vsel::tensor
