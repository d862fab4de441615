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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acgan/matrix.hpp"

namespace acgan::nn {

enum class Activation { kRelu, kLeakyRelu, kTanh, kSigmoid, kLinear };

std::string_view to_string(Activation a);
// Accepts "relu", "leaky_relu", "tanh", "sigmoid", "linear".
Activation parse_activation(std::string_view s);

inline constexpr double kDefaultLeakySlope = 0.2;
// Sigmoid outputs are clamped to [kSigmoidEps, 1 - kSigmoidEps].
inline constexpr double kSigmoidEps = 1e-7;

struct LayerSpec {
  std::size_t input_width = 0;
  std::size_t output_width = 0;
  Activation activation = Activation::kLinear;
  double leaky_slope = kDefaultLeakySlope;

  bool operator==(const LayerSpec&) const = default;
};

enum class Role { kGeneric, kGenerator, kDiscriminator };

// Dense feed-forward network. Parameters live in one flat vector, laid out
// per layer as the (input_width x output_width) row-major weight block
// followed by the output_width biases. Forward is y = x W + b.
struct MlpNetwork {
  std::vector<LayerSpec> layers;
  std::vector<double> params;
  Role role = Role::kGeneric;

  std::size_t input_width() const { return layers.front().input_width; }
  std::size_t output_width() const { return layers.back().output_width; }

  std::size_t weight_offset(std::size_t layer) const;
  std::size_t bias_offset(std::size_t layer) const;
  ConstMatView weights(std::size_t layer) const;
  MatView weights(std::size_t layer);
  std::span<const double> bias(std::size_t layer) const;
  std::span<double> bias(std::size_t layer);

  bool operator==(const MlpNetwork&) const = default;
};

// Sum over layers of in*out + out.
std::size_t param_count(std::span<const LayerSpec> layers);

// Throws ConfigError on broken chains, zero widths, slopes outside (0, 1),
// or a head that does not match the role.
void validate_layers(std::span<const LayerSpec> layers, Role role);

// Layer list for input -> hidden... -> output with one hidden activation.
std::vector<LayerSpec> mlp_layers(std::size_t input_width, std::span<const std::size_t> hidden,
                                  std::size_t output_width, Activation hidden_activation,
                                  Activation head, double leaky_slope = kDefaultLeakySlope);

// Glorot-uniform weights, zero biases. The same (layers, seed, label) always
// yields the same parameters.
MlpNetwork init_network(std::vector<LayerSpec> layers, std::uint64_t seed,
                        Role role = Role::kGeneric, std::string_view stream_label = "init");

struct ForwardTrace {
  Matrix input;
  std::vector<Matrix> pre;  // pre-activations, one per layer
  std::vector<Matrix> act;  // activations, one per layer

  const Matrix& output() const { return act.back(); }
  std::size_t batch_size() const { return input.rows(); }
};

struct GradientBundle {
  std::vector<double> param_grads;  // aligned with MlpNetwork::params
  Matrix input_grads;               // batch x input_width
};

struct BackwardOptions {
  bool param_grads = true;
  bool input_grads = true;
};

ForwardTrace forward(const MlpNetwork& net, const Matrix& batch);
// Final activations only.
Matrix predict(const MlpNetwork& net, const Matrix& batch);

// Reverse-mode pass for the scalar sum(upstream .* output). The sigmoid
// derivative uses the clamped output, s (1 - s); the ReLU derivative at
// exactly zero is zero. Skipped parts of the bundle are left empty.
GradientBundle backward(const MlpNetwork& net, const ForwardTrace& trace, const Matrix& upstream,
                        BackwardOptions options = {});

// ||grad_x D(x)||_2 for every row of `points`. Requires a scalar head.
std::vector<double> input_gradient_norms(const MlpNetwork& net, const Matrix& points);

}  // namespace acgan::nn
