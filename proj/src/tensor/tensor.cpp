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

#include "vsel/tensor/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vsel/error.hpp"

namespace vsel::tensor {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("Matrix: " + std::to_string(data_.size()) + " values for shape " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> v;
  v.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("Matrix::from_rows: ragged rows");
    v.insert(v.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(v));
}

Matrix Matrix::column(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::row(std::span<const double> values) {
  return Matrix(1, values.size(), std::vector<double>(values.begin(), values.end()));
}

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ShapeError("Matrix +=: " + shape_string() + " vs " + other.shape_string());
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

std::string Matrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Tensor Tensor::constant(Matrix value) {
  auto impl = std::make_shared<Impl>();
  impl->value = std::move(value);
  return Tensor(std::move(impl));
}

Tensor Tensor::parameter(Matrix value) {
  auto impl = std::make_shared<Impl>();
  impl->grad = Matrix(value.rows(), value.cols());
  impl->value = std::move(value);
  impl->requires_grad = true;
  return Tensor(std::move(impl));
}

void Tensor::zero_grad() {
  if (impl_->grad.rows() != rows() || impl_->grad.cols() != cols()) {
    impl_->grad = Matrix(rows(), cols());
  } else {
    impl_->grad.fill(0.0);
  }
}

double Tensor::item() const {
  if (rows() != 1 || cols() != 1) {
    throw Error(ErrorCode::kNotScalar, "item: tensor is " + value().shape_string());
  }
  return value()(0, 0);
}

namespace {

using ImplPtr = std::shared_ptr<Tensor::Impl>;

[[noreturn]] void shape_fail(const char* op, const Matrix& a, const Matrix& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + a.shape_string() + " and " +
                   b.shape_string());
}

// Grad buffer of an input, allocated on first touch.
Matrix& grad_of(Tensor::Impl& t) {
  if (t.grad.rows() != t.value.rows() || t.grad.cols() != t.value.cols()) {
    t.grad = Matrix(t.value.rows(), t.value.cols());
  }
  return t.grad;
}

enum class Broadcast { kNone, kRow, kCol };

Broadcast broadcast_kind(const char* op, const Matrix& a, const Matrix& b) {
  if (a.rows() == b.rows() && a.cols() == b.cols()) return Broadcast::kNone;
  if (b.rows() == 1 && b.cols() == a.cols()) return Broadcast::kRow;
  if (b.cols() == 1 && b.rows() == a.rows()) return Broadcast::kCol;
  shape_fail(op, a, b);
}

double bval(const Matrix& b, Broadcast k, std::size_t r, std::size_t c) {
  switch (k) {
    case Broadcast::kRow:
      return b(0, c);
    case Broadcast::kCol:
      return b(r, 0);
    case Broadcast::kNone:
      break;
  }
  return b(r, c);
}

double& bref(Matrix& b, Broadcast k, std::size_t r, std::size_t c) {
  switch (k) {
    case Broadcast::kRow:
      return b(0, c);
    case Broadcast::kCol:
      return b(r, 0);
    case Broadcast::kNone:
      break;
  }
  return b(r, c);
}

void check_index(const char* op, std::span<const std::uint32_t> index, std::size_t bound) {
  for (std::uint32_t i : index) {
    if (i >= bound) {
      throw Error(ErrorCode::kIndex, std::string(op) + ": index " + std::to_string(i) +
                                         " out of range for " + std::to_string(bound) + " rows");
    }
  }
}

}  // namespace

Tensor Tape::record(Matrix value, std::vector<ImplPtr> inputs,
                    std::function<void(const ImplPtr&)> backward) {
  auto out = std::make_shared<Impl>();
  out->value = std::move(value);
  out->requires_grad = recording_ && std::any_of(inputs.begin(), inputs.end(), [](const ImplPtr& p) {
                         return p->requires_grad;
                       });
  if (out->requires_grad) {
    records_.push_back(Record{out, [out, fn = std::move(backward)] { fn(out); }});
  }
  return Tensor(std::move(out));
}

Tensor Tape::matmul(const Tensor& a, const Tensor& b) {
  const Matrix& A = a.value();
  const Matrix& B = b.value();
  if (A.cols() != B.rows()) shape_fail("matmul", A, B);
  const std::size_t n = A.rows(), k = A.cols(), m = B.cols();
  Matrix C(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = A(i, p);
      if (aip == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) C(i, j) += aip * B(p, j);
    }
  }
  ImplPtr ai = a.impl_, bi = b.impl_;
  return record(std::move(C), {ai, bi}, [ai, bi, n, k, m](const ImplPtr& out) {
    const Matrix& G = out->grad;
    if (ai->requires_grad) {
      Matrix& gA = grad_of(*ai);
      const Matrix& Bv = bi->value;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const double g = G(i, j);
          if (g == 0.0) continue;
          for (std::size_t p = 0; p < k; ++p) gA(i, p) += g * Bv(p, j);
        }
    }
    if (bi->requires_grad) {
      Matrix& gB = grad_of(*bi);
      const Matrix& Av = ai->value;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          const double a_ip = Av(i, p);
          if (a_ip == 0.0) continue;
          for (std::size_t j = 0; j < m; ++j) gB(p, j) += a_ip * G(i, j);
        }
    }
  });
}

Tensor Tape::add(const Tensor& a, const Tensor& b) {
  const Matrix& A = a.value();
  const Matrix& B = b.value();
  const Broadcast bk = broadcast_kind("add", A, B);
  Matrix C = A;
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) C(r, c) += bval(B, bk, r, c);
  ImplPtr ai = a.impl_, bi = b.impl_;
  return record(std::move(C), {ai, bi}, [ai, bi, bk](const ImplPtr& out) {
    const Matrix& G = out->grad;
    if (ai->requires_grad) grad_of(*ai) += G;
    if (bi->requires_grad) {
      Matrix& gB = grad_of(*bi);
      for (std::size_t r = 0; r < G.rows(); ++r)
        for (std::size_t c = 0; c < G.cols(); ++c) bref(gB, bk, r, c) += G(r, c);
    }
  });
}

Tensor Tape::sub(const Tensor& a, const Tensor& b) { return add(a, scalar_mul(b, -1.0)); }

Tensor Tape::add_scalar(const Tensor& a, double s) {
  Matrix C = a.value();
  for (double& v : C.values()) v += s;
  ImplPtr ai = a.impl_;
  return record(std::move(C), {ai}, [ai](const ImplPtr& out) { grad_of(*ai) += out->grad; });
}

Tensor Tape::scalar_mul(const Tensor& a, double s) {
  Matrix C = a.value();
  for (double& v : C.values()) v *= s;
  ImplPtr ai = a.impl_;
  return record(std::move(C), {ai}, [ai, s](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    for (std::size_t i = 0; i < gA.size(); ++i) gA[i] += s * out->grad[i];
  });
}

Tensor Tape::elementwise_mul(const Tensor& a, const Tensor& b) {
  const Matrix& A = a.value();
  const Matrix& B = b.value();
  const Broadcast bk = broadcast_kind("elementwise_mul", A, B);
  Matrix C = A;
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) C(r, c) *= bval(B, bk, r, c);
  ImplPtr ai = a.impl_, bi = b.impl_;
  return record(std::move(C), {ai, bi}, [ai, bi, bk](const ImplPtr& out) {
    const Matrix& G = out->grad;
    const Matrix& Av = ai->value;
    const Matrix& Bv = bi->value;
    if (ai->requires_grad) {
      Matrix& gA = grad_of(*ai);
      for (std::size_t r = 0; r < G.rows(); ++r)
        for (std::size_t c = 0; c < G.cols(); ++c) gA(r, c) += G(r, c) * bval(Bv, bk, r, c);
    }
    if (bi->requires_grad) {
      Matrix& gB = grad_of(*bi);
      for (std::size_t r = 0; r < G.rows(); ++r)
        for (std::size_t c = 0; c < G.cols(); ++c) bref(gB, bk, r, c) += G(r, c) * Av(r, c);
    }
  });
}

Tensor Tape::leaky_relu(const Tensor& a, double slope) {
  Matrix C = a.value();
  for (double& v : C.values()) v = v > 0.0 ? v : slope * v;
  ImplPtr ai = a.impl_;
  return record(std::move(C), {ai}, [ai, slope](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    for (std::size_t i = 0; i < gA.size(); ++i) {
      gA[i] += out->grad[i] * (ai->value[i] > 0.0 ? 1.0 : slope);
    }
  });
}

Tensor Tape::sigmoid(const Tensor& a) {
  Matrix C = a.value();
  for (double& v : C.values()) {
    v = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  }
  ImplPtr ai = a.impl_;
  return record(std::move(C), {ai}, [ai](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    for (std::size_t i = 0; i < gA.size(); ++i) {
      const double y = out->value[i];
      gA[i] += out->grad[i] * y * (1.0 - y);
    }
  });
}

Tensor Tape::log(const Tensor& a) {
  Matrix C = a.value();
  for (double& v : C.values()) v = std::log(v);
  ImplPtr ai = a.impl_;
  return record(std::move(C), {ai}, [ai](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    for (std::size_t i = 0; i < gA.size(); ++i) gA[i] += out->grad[i] / ai->value[i];
  });
}

Tensor Tape::softmax_rows(const Tensor& a) {
  const Matrix& A = a.value();
  Matrix C(A.rows(), A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < A.cols(); ++c) mx = std::max(mx, A(r, c));
    double z = 0.0;
    for (std::size_t c = 0; c < A.cols(); ++c) z += (C(r, c) = std::exp(A(r, c) - mx));
    for (std::size_t c = 0; c < A.cols(); ++c) C(r, c) /= z;
  }
  ImplPtr ai = a.impl_;
  return record(std::move(C), {ai}, [ai](const ImplPtr& out) {
    const Matrix& Y = out->value;
    const Matrix& G = out->grad;
    Matrix& gA = grad_of(*ai);
    for (std::size_t r = 0; r < Y.rows(); ++r) {
      double dot = 0.0;
      for (std::size_t c = 0; c < Y.cols(); ++c) dot += G(r, c) * Y(r, c);
      for (std::size_t c = 0; c < Y.cols(); ++c) gA(r, c) += Y(r, c) * (G(r, c) - dot);
    }
  });
}

Tensor Tape::sum_rows(const Tensor& a) {
  const Matrix& A = a.value();
  Matrix C(1, A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) C(0, c) += A(r, c);
  ImplPtr ai = a.impl_;
  return record(std::move(C), {ai}, [ai](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    for (std::size_t r = 0; r < gA.rows(); ++r)
      for (std::size_t c = 0; c < gA.cols(); ++c) gA(r, c) += out->grad(0, c);
  });
}

Tensor Tape::sum_all(const Tensor& a) {
  double s = 0.0;
  for (double v : a.value().values()) s += v;
  ImplPtr ai = a.impl_;
  return record(Matrix(1, 1, s), {ai}, [ai](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    const double g = out->grad(0, 0);
    for (double& v : gA.values()) v += g;
  });
}

Tensor Tape::transpose(const Tensor& a) {
  const Matrix& A = a.value();
  Matrix C(A.cols(), A.rows());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) C(c, r) = A(r, c);
  ImplPtr ai = a.impl_;
  return record(std::move(C), {ai}, [ai](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    for (std::size_t r = 0; r < gA.rows(); ++r)
      for (std::size_t c = 0; c < gA.cols(); ++c) gA(r, c) += out->grad(c, r);
  });
}

Tensor Tape::concat_rows(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("concat_rows: no inputs");
  const std::size_t cols = parts[0].cols();
  std::size_t rows = 0;
  std::vector<ImplPtr> ins;
  for (const Tensor& t : parts) {
    if (t.cols() != cols) shape_fail("concat_rows", parts[0].value(), t.value());
    rows += t.rows();
    ins.push_back(t.impl_);
  }
  Matrix C(rows, cols);
  std::size_t off = 0;
  for (const Tensor& t : parts) {
    std::copy(t.value().values().begin(), t.value().values().end(),
              C.values().begin() + static_cast<std::ptrdiff_t>(off * cols));
    off += t.rows();
  }
  return record(std::move(C), ins, [ins, cols](const ImplPtr& out) {
    std::size_t off = 0;
    for (const ImplPtr& p : ins) {
      const std::size_t n = p->value.rows() * cols;
      if (p->requires_grad) {
        Matrix& g = grad_of(*p);
        for (std::size_t i = 0; i < n; ++i) g[i] += out->grad[off + i];
      }
      off += n;
    }
  });
}

Tensor Tape::concat_cols(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no inputs");
  const std::size_t rows = parts[0].rows();
  std::size_t cols = 0;
  std::vector<ImplPtr> ins;
  for (const Tensor& t : parts) {
    if (t.rows() != rows) shape_fail("concat_cols", parts[0].value(), t.value());
    cols += t.cols();
    ins.push_back(t.impl_);
  }
  Matrix C(rows, cols);
  std::size_t off = 0;
  for (const Tensor& t : parts) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < t.cols(); ++c) C(r, off + c) = t.value()(r, c);
    off += t.cols();
  }
  return record(std::move(C), ins, [ins, rows](const ImplPtr& out) {
    std::size_t off = 0;
    for (const ImplPtr& p : ins) {
      const std::size_t w = p->value.cols();
      if (p->requires_grad) {
        Matrix& g = grad_of(*p);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < w; ++c) g(r, c) += out->grad(r, off + c);
      }
      off += w;
    }
  });
}

Tensor Tape::gather_rows(const Tensor& a, std::span<const std::uint32_t> index) {
  const Matrix& A = a.value();
  check_index("gather_rows", index, A.rows());
  const std::size_t cols = A.cols();
  Matrix C(index.size(), cols);
  for (std::size_t k = 0; k < index.size(); ++k)
    for (std::size_t c = 0; c < cols; ++c) C(k, c) = A(index[k], c);
  ImplPtr ai = a.impl_;
  std::vector<std::uint32_t> idx(index.begin(), index.end());
  return record(std::move(C), {ai}, [ai, idx = std::move(idx), cols](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t c = 0; c < cols; ++c) gA(idx[k], c) += out->grad(k, c);
  });
}

Tensor Tape::scatter_add_rows(const Tensor& a, std::span<const std::uint32_t> index,
                              std::size_t out_rows) {
  const Matrix& A = a.value();
  if (index.size() != A.rows()) {
    throw ShapeError("scatter_add_rows: " + std::to_string(index.size()) + " indices for " +
                     A.shape_string());
  }
  check_index("scatter_add_rows", index, out_rows);
  const std::size_t cols = A.cols();
  Matrix C(out_rows, cols);
  for (std::size_t k = 0; k < index.size(); ++k)
    for (std::size_t c = 0; c < cols; ++c) C(index[k], c) += A(k, c);
  ImplPtr ai = a.impl_;
  std::vector<std::uint32_t> idx(index.begin(), index.end());
  return record(std::move(C), {ai}, [ai, idx = std::move(idx), cols](const ImplPtr& out) {
    Matrix& gA = grad_of(*ai);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t c = 0; c < cols; ++c) gA(k, c) += out->grad(idx[k], c);
  });
}

Tensor Tape::segment_softmax(const Tensor& a, std::span<const std::uint32_t> segment,
                             std::size_t num_segments) {
  const Matrix& A = a.value();
  if (A.cols() != 1 || segment.size() != A.rows()) {
    throw ShapeError("segment_softmax: expected a column of " + std::to_string(segment.size()) +
                     " values, got " + A.shape_string());
  }
  check_index("segment_softmax", segment, num_segments);
  std::vector<double> mx(num_segments, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < segment.size(); ++k) mx[segment[k]] = std::max(mx[segment[k]], A[k]);
  std::vector<double> z(num_segments, 0.0);
  Matrix C(A.rows(), 1);
  for (std::size_t k = 0; k < segment.size(); ++k) z[segment[k]] += (C[k] = std::exp(A[k] - mx[segment[k]]));
  for (std::size_t k = 0; k < segment.size(); ++k) C[k] /= z[segment[k]];
  ImplPtr ai = a.impl_;
  std::vector<std::uint32_t> seg(segment.begin(), segment.end());
  return record(std::move(C), {ai}, [ai, seg = std::move(seg), num_segments](const ImplPtr& out) {
    const Matrix& Y = out->value;
    const Matrix& G = out->grad;
    std::vector<double> dot(num_segments, 0.0);
    for (std::size_t k = 0; k < seg.size(); ++k) dot[seg[k]] += G[k] * Y[k];
    Matrix& gA = grad_of(*ai);
    for (std::size_t k = 0; k < seg.size(); ++k) gA[k] += Y[k] * (G[k] - dot[seg[k]]);
  });
}

void Tape::backward(const Tensor& loss) {
  if (!loss.defined() || loss.rows() != 1 || loss.cols() != 1) {
    throw Error(ErrorCode::kNotScalar,
                "backward: loss must be 1x1, got " +
                    (loss.defined() ? loss.value().shape_string() : std::string("undefined")));
  }
  if (!loss.requires_grad()) return;
  for (Record& r : records_) r.output->grad = Matrix(r.output->value.rows(), r.output->value.cols());
  grad_of(*loss.impl_)(0, 0) += 1.0;
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) it->backward();
}

}  // namespace vsel::tensor
