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

// Serial reference kernels against the OpenMP kernels, plus one full
// discriminator forward/backward pass at training sizes.
#include <benchmark/benchmark.h>

#include "acgan/kernels.hpp"
#include "acgan/nn.hpp"
#include "acgan/rng.hpp"

namespace {

using acgan::Matrix;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Matrix m(rows, cols);
  acgan::RngStream rng(seed, "bench");
  rng.fill_normal(m);
  return m;
}

template <void (*Gemm)(acgan::ConstMatView, acgan::ConstMatView, acgan::MatView)>
void BM_GemmNN(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(2));
  const Matrix a = random_matrix(m, k, 1);
  const Matrix b = random_matrix(k, n, 2);
  Matrix c(m, n);
  for (auto _ : state) {
    Gemm(a.view(), b.view(), c.view());
    benchmark::DoNotOptimize(c.data());
  }
  state.counters["GFLOPS"] = benchmark::Counter(2.0 * m * k * n, benchmark::Counter::kIsIterationInvariantRate,
                                                benchmark::Counter::kIs1000);
}

template <void (*Gemm)(acgan::ConstMatView, acgan::ConstMatView, acgan::MatView)>
void BM_GemmTN(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(2));
  const Matrix a = random_matrix(k, m, 3);
  const Matrix b = random_matrix(k, n, 4);
  Matrix c(m, n);
  for (auto _ : state) {
    Gemm(a.view(), b.view(), c.view());
    benchmark::DoNotOptimize(c.data());
  }
  state.counters["GFLOPS"] = benchmark::Counter(2.0 * m * k * n, benchmark::Counter::kIsIterationInvariantRate,
                                                benchmark::Counter::kIs1000);
}

template <void (*Gemm)(acgan::ConstMatView, acgan::ConstMatView, acgan::MatView)>
void BM_GemmNT(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(2));
  const Matrix a = random_matrix(m, k, 5);
  const Matrix b = random_matrix(n, k, 6);
  Matrix c(m, n);
  for (auto _ : state) {
    Gemm(a.view(), b.view(), c.view());
    benchmark::DoNotOptimize(c.data());
  }
  state.counters["GFLOPS"] = benchmark::Counter(2.0 * m * k * n, benchmark::Counter::kIsIterationInvariantRate,
                                                benchmark::Counter::kIs1000);
}

// Batch x width x width: the hidden-layer product of a discriminator step.
void GemmSizes(benchmark::internal::Benchmark* b) {
  b->Args({64, 512, 512})->Args({192, 512, 512})->Args({512, 400, 400})->Unit(benchmark::kMicrosecond);
}

BENCHMARK(BM_GemmNN<acgan::kernels::reference::gemm_nn>)->Name("gemm_nn/reference")->Apply(GemmSizes);
BENCHMARK(BM_GemmNN<acgan::kernels::gemm_nn>)->Name("gemm_nn/parallel")->Apply(GemmSizes);
BENCHMARK(BM_GemmTN<acgan::kernels::reference::gemm_tn>)->Name("gemm_tn/reference")->Apply(GemmSizes);
BENCHMARK(BM_GemmTN<acgan::kernels::gemm_tn>)->Name("gemm_tn/parallel")->Apply(GemmSizes);
BENCHMARK(BM_GemmNT<acgan::kernels::reference::gemm_nt>)->Name("gemm_nt/reference")->Apply(GemmSizes);
BENCHMARK(BM_GemmNT<acgan::kernels::gemm_nt>)->Name("gemm_nt/parallel")->Apply(GemmSizes);

void BM_ColumnSumsReference(benchmark::State& state) {
  const Matrix a = random_matrix(512, 512, 5);
  std::vector<double> out(a.cols());
  for (auto _ : state) {
    acgan::kernels::reference::column_sums(a.view(), out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ColumnSumsReference)->Name("column_sums/reference");

void BM_ColumnSumsParallel(benchmark::State& state) {
  const Matrix a = random_matrix(512, 512, 5);
  std::vector<double> out(a.cols());
  for (auto _ : state) {
    acgan::kernels::column_sums(a.view(), out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ColumnSumsParallel)->Name("column_sums/parallel");

void BM_DiscriminatorStep(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const auto layers = acgan::nn::mlp_layers(2, std::vector<std::size_t>(depth, 512), 1,
                                            acgan::nn::Activation::kRelu, acgan::nn::Activation::kSigmoid);
  const auto net = acgan::nn::init_network(layers, 7, acgan::nn::Role::kDiscriminator);
  const Matrix x = random_matrix(192, 2, 8);
  const Matrix upstream(192, 1, 1.0);
  for (auto _ : state) {
    const auto trace = acgan::nn::forward(net, x);
    auto grads = acgan::nn::backward(net, trace, upstream, {true, true});
    benchmark::DoNotOptimize(grads.param_grads.data());
  }
}
BENCHMARK(BM_DiscriminatorStep)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

}  // namespace

int main(int argc, char** argv) {
  acgan::kernels::retain_heap_memory();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
