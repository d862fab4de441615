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

#include <cmath>

#include "acgan/error.hpp"
#include "acgan/kernels.hpp"

namespace acgan::kernels::reference {

void gemm_nn(ConstMatView a, ConstMatView b, MatView c) {
  if (a.cols != b.rows || c.rows != a.rows || c.cols != b.cols) {
    throw InputError("gemm_nn: shape mismatch");
  }
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < a.cols; ++p) s += a(i, p) * b(p, j);
      c(i, j) = s;
    }
  }
}

void gemm_tn(ConstMatView a, ConstMatView b, MatView c) {
  if (a.rows != b.rows || c.rows != a.cols || c.cols != b.cols) {
    throw InputError("gemm_tn: shape mismatch");
  }
  for (std::size_t i = 0; i < a.cols; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < a.rows; ++p) s += a(p, i) * b(p, j);
      c(i, j) = s;
    }
  }
}

void gemm_nt(ConstMatView a, ConstMatView b, MatView c) {
  if (a.cols != b.cols || c.rows != a.rows || c.cols != b.rows) {
    throw InputError("gemm_nt: shape mismatch");
  }
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < a.cols; ++p) s += a(i, p) * b(j, p);
      c(i, j) = s;
    }
  }
}

void add_row_vector(MatView c, std::span<const double> bias) {
  if (bias.size() != c.cols) throw InputError("add_row_vector: width mismatch");
  for (std::size_t r = 0; r < c.rows; ++r) {
    for (std::size_t j = 0; j < c.cols; ++j) c(r, j) += bias[j];
  }
}

void column_sums(ConstMatView a, std::span<double> out) {
  if (out.size() != a.cols) throw InputError("column_sums: width mismatch");
  for (std::size_t j = 0; j < a.cols; ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) s += a(r, j);
    out[j] = s;
  }
}

void row_norms(ConstMatView a, std::span<double> out) {
  if (out.size() != a.rows) throw InputError("row_norms: length mismatch");
  for (std::size_t r = 0; r < a.rows; ++r) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += a(r, j) * a(r, j);
    out[r] = std::sqrt(s);
  }
}

}  // namespace acgan::kernels::reference
