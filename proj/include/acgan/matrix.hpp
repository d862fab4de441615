/* Copyright 2026 The acgan Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace acgan {

// Non-owning row-major views. Weight blocks inside a flat parameter vector
// are handed to the kernels through these.
struct ConstMatView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;

  const double& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct MatView {
  double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  operator ConstMatView() const { return {data, rows, cols}; }
};

// Dense row-major matrix of doubles. One row per sample throughout the
// library: a batch of n points in d dimensions is an n x d matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const double& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  MatView view() { return {data_.data(), rows_, cols_}; }
  ConstMatView view() const { return {data_.data(), rows_, cols_}; }

  // Copy of rows [first, first + count).
  Matrix slice_rows(std::size_t first, std::size_t count) const;
  // Rows of `a` followed by rows of `b`; column counts must agree.
  static Matrix vstack(const Matrix& a, const Matrix& b);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace acgan
