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

#include "acgan/kernels.hpp"

#include <malloc.h>
#include <omp.h>

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "acgan/error.hpp"

namespace acgan::kernels {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using Map = Eigen::Map<RowMajor>;

ConstMap as_eigen(ConstMatView v) {
  return {v.data, static_cast<Eigen::Index>(v.rows), static_cast<Eigen::Index>(v.cols)};
}
Map as_eigen(MatView v) {
  return {v.data, static_cast<Eigen::Index>(v.rows), static_cast<Eigen::Index>(v.cols)};
}

std::size_t block_count(std::size_t rows) { return (rows + kRowBlock - 1) / kRowBlock; }

void check(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

// c = product(a) one kRowBlock-row block at a time; a short last block is
// computed in a scratch zero-padded to a multiple of kRowQuantum rows.
template <typename Product>
void for_row_blocks(ConstMatView a, MatView c, Product&& product) {
  const auto ea = as_eigen(a);
  auto ec = as_eigen(c);
  const auto block = static_cast<Eigen::Index>(kRowBlock);
  const auto blocks = static_cast<std::ptrdiff_t>(block_count(a.rows));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
    const auto r0 = static_cast<Eigen::Index>(blk) * block;
    const auto len = std::min<Eigen::Index>(block, ec.rows() - r0);
    const auto quantum = static_cast<Eigen::Index>(kRowQuantum);
    if (len % quantum == 0) {
      ec.middleRows(r0, len).noalias() = product(ea.middleRows(r0, len));
    } else {
      const auto height = (len / quantum + 1) * quantum;
      RowMajor padded = RowMajor::Zero(height, ea.cols());
      padded.topRows(len) = ea.middleRows(r0, len);
      RowMajor out(height, ec.cols());
      out.noalias() = product(padded);
      ec.middleRows(r0, len) = out.topRows(len);
    }
  }
}

}  // namespace

void gemm_nn(ConstMatView a, ConstMatView b, MatView c) {
  check(a.cols == b.rows && c.rows == a.rows && c.cols == b.cols, "gemm_nn: shape mismatch");
  const auto eb = as_eigen(b);
  for_row_blocks(a, c, [&](const auto& rows) { return rows * eb; });
}

void gemm_tn(ConstMatView a, ConstMatView b, MatView c) {
  check(a.rows == b.rows && c.rows == a.cols && c.cols == b.cols, "gemm_tn: shape mismatch");
  const auto ea = as_eigen(a);
  const auto eb = as_eigen(b);
  auto ec = as_eigen(c);
  const auto blocks = static_cast<std::ptrdiff_t>(block_count(a.cols));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
    const auto r0 = static_cast<Eigen::Index>(blk * kRowBlock);
    const auto len = std::min<Eigen::Index>(kRowBlock, ec.rows() - r0);
    ec.middleRows(r0, len).noalias() = ea.middleCols(r0, len).transpose() * eb;
  }
}

void gemm_nt(ConstMatView a, ConstMatView b, MatView c) {
  check(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows, "gemm_nt: shape mismatch");
  const auto eb = as_eigen(b);
  for_row_blocks(a, c, [&](const auto& rows) { return rows * eb.transpose(); });
}

void add_row_vector(MatView c, std::span<const double> bias) {
  check(bias.size() == c.cols, "add_row_vector: width mismatch");
  const auto rows = static_cast<std::ptrdiff_t>(c.rows);
  const std::size_t cols = c.cols;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    double* row = c.data + static_cast<std::size_t>(r) * cols;
#pragma omp simd
    for (std::size_t j = 0; j < cols; ++j) row[j] += bias[j];
  }
}

void column_sums(ConstMatView a, std::span<double> out) {
  check(out.size() == a.cols, "column_sums: width mismatch");
  const std::size_t cols = a.cols;
  const auto blocks = static_cast<std::ptrdiff_t>((cols + kRowBlock - 1) / kRowBlock);
  // Parallel over column blocks; each column is summed top to bottom.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
    const std::size_t j0 = static_cast<std::size_t>(blk) * kRowBlock;
    const std::size_t j1 = std::min(cols, j0 + kRowBlock);
    for (std::size_t j = j0; j < j1; ++j) out[j] = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) {
      const double* row = a.data + r * cols;
      for (std::size_t j = j0; j < j1; ++j) out[j] += row[j];
    }
  }
}

void row_norms(ConstMatView a, std::span<double> out) {
  check(out.size() == a.rows, "row_norms: length mismatch");
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const double* row = a.data + static_cast<std::size_t>(r) * a.cols;
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += row[j] * row[j];
    out[static_cast<std::size_t>(r)] = std::sqrt(s);
  }
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  static const int default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : default_threads);
}

void retain_heap_memory() {
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
}

}  // namespace acgan::kernels
