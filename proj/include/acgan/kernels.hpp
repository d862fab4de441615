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

#include "acgan/matrix.hpp"

// Dense kernels behind the network engine. Two implementations share one
// signature set:
//
//   acgan::kernels            OpenMP-parallel, used by the library
//   acgan::kernels::reference straight serial loops, kept for tests and the
//                             benchmark
//
// The parallel versions split the *output* into fixed-size row blocks that do
// not depend on the thread count, and every reduction runs serially inside one
// block. Results are therefore bit-identical for any OMP_NUM_THREADS.
//
// gemm_nn and gemm_nt also pad a short last block with zero rows up to a
// multiple of kRowQuantum. Every row then goes through the same Eigen
// micro-kernel path, so each output row is bit-identical whatever batch it was
// computed in.
namespace acgan::kernels {

// Output row-block size used to partition parallel work.
inline constexpr std::size_t kRowBlock = 96;
// Eigen's GEMM micro-kernel height for doubles is 6, 12 or 24 rows (SSE, AVX,
// AVX-512); this is a multiple of all three.
inline constexpr std::size_t kRowQuantum = 24;
static_assert(kRowBlock % kRowQuantum == 0);

// c = a * b            a: m x k, b: k x n, c: m x n
void gemm_nn(ConstMatView a, ConstMatView b, MatView c);
// c = a^T * b          a: k x m, b: k x n, c: m x n
void gemm_tn(ConstMatView a, ConstMatView b, MatView c);
// c = a * b^T          a: m x k, b: n x k, c: m x n
void gemm_nt(ConstMatView a, ConstMatView b, MatView c);

// c[r, :] += bias for every row r.
void add_row_vector(MatView c, std::span<const double> bias);
// out[j] = sum_r a[r, j], summed in increasing r.
void column_sums(ConstMatView a, std::span<double> out);
// out[r] = || a[r, :] ||_2
void row_norms(ConstMatView a, std::span<double> out);

namespace reference {

void gemm_nn(ConstMatView a, ConstMatView b, MatView c);
void gemm_tn(ConstMatView a, ConstMatView b, MatView c);
void gemm_nt(ConstMatView a, ConstMatView b, MatView c);
void add_row_vector(MatView c, std::span<const double> bias);
void column_sums(ConstMatView a, std::span<double> out);
void row_norms(ConstMatView a, std::span<double> out);

}  // namespace reference

// Number of OpenMP threads the parallel kernels will use.
int max_threads();
// Forces the thread count; 0 restores the runtime default.
void set_threads(int n);

// Keeps freed activation and gradient buffers in the process heap rather than
// returning them to the OS, so repeated training steps stop page-faulting.
// Call once at program start.
void retain_heap_memory();

}  // namespace acgan::kernels
