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

#include "acgan/nn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acgan/error.hpp"
#include "acgan/kernels.hpp"
#include "acgan/rng.hpp"

namespace acgan::nn {
namespace {

double sigmoid(double a) {
  if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

void apply_activation(const LayerSpec& layer, const Matrix& pre, Matrix& act) {
  const std::size_t n = pre.size();
  const double* in = pre.data();
  double* out = act.data();
  const auto count = static_cast<std::ptrdiff_t>(n);
  switch (layer.activation) {
    case Activation::kRelu:
#pragma omp parallel for simd schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
      break;
    case Activation::kLeakyRelu: {
      const double slope = layer.leaky_slope;
#pragma omp parallel for simd schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = in[i] > 0.0 ? in[i] : slope * in[i];
      break;
    }
    case Activation::kTanh:
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = std::tanh(in[i]);
      break;
    case Activation::kSigmoid:
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) {
        out[i] = std::clamp(sigmoid(in[i]), kSigmoidEps, 1.0 - kSigmoidEps);
      }
      break;
    case Activation::kLinear:
      std::copy_n(in, n, out);
      break;
  }
}

// delta = upstream .* f'(pre), in place on `delta` (which holds upstream).
void multiply_derivative(const LayerSpec& layer, const Matrix& pre, const Matrix& act,
                         Matrix& delta) {
  const auto count = static_cast<std::ptrdiff_t>(delta.size());
  const double* p = pre.data();
  const double* a = act.data();
  double* d = delta.data();
  switch (layer.activation) {
    case Activation::kRelu:
#pragma omp parallel for simd schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) d[i] = p[i] > 0.0 ? d[i] : 0.0;
      break;
    case Activation::kLeakyRelu: {
      const double slope = layer.leaky_slope;
#pragma omp parallel for simd schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) d[i] = p[i] > 0.0 ? d[i] : slope * d[i];
      break;
    }
    case Activation::kTanh:
#pragma omp parallel for simd schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) d[i] *= 1.0 - a[i] * a[i];
      break;
    case Activation::kSigmoid:
#pragma omp parallel for simd schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) d[i] *= a[i] * (1.0 - a[i]);
      break;
    case Activation::kLinear:
      break;
  }
}

}  // namespace

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::kRelu: return "relu";
    case Activation::kLeakyRelu: return "leaky_relu";
    case Activation::kTanh: return "tanh";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kLinear: return "linear";
  }
  return "linear";
}

Activation parse_activation(std::string_view s) {
  if (s == "relu") return Activation::kRelu;
  if (s == "leaky_relu") return Activation::kLeakyRelu;
  if (s == "tanh") return Activation::kTanh;
  if (s == "sigmoid") return Activation::kSigmoid;
  if (s == "linear") return Activation::kLinear;
  throw ConfigError("unknown activation '" + std::string(s) + "'");
}

std::size_t MlpNetwork::weight_offset(std::size_t layer) const {
  std::size_t off = 0;
  for (std::size_t k = 0; k < layer; ++k) {
    off += layers[k].input_width * layers[k].output_width + layers[k].output_width;
  }
  return off;
}

std::size_t MlpNetwork::bias_offset(std::size_t layer) const {
  return weight_offset(layer) + layers[layer].input_width * layers[layer].output_width;
}

ConstMatView MlpNetwork::weights(std::size_t layer) const {
  return {params.data() + weight_offset(layer), layers[layer].input_width,
          layers[layer].output_width};
}

MatView MlpNetwork::weights(std::size_t layer) {
  return {params.data() + weight_offset(layer), layers[layer].input_width,
          layers[layer].output_width};
}

std::span<const double> MlpNetwork::bias(std::size_t layer) const {
  return {params.data() + bias_offset(layer), layers[layer].output_width};
}

std::span<double> MlpNetwork::bias(std::size_t layer) {
  return {params.data() + bias_offset(layer), layers[layer].output_width};
}

std::size_t param_count(std::span<const LayerSpec> layers) {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.input_width * l.output_width + l.output_width;
  return n;
}

void validate_layers(std::span<const LayerSpec> layers, Role role) {
  if (layers.empty()) throw ConfigError("network needs at least one layer");
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& l = layers[k];
    if (l.input_width == 0 || l.output_width == 0) {
      throw ConfigError("layer " + std::to_string(k) + " has zero width");
    }
    if (l.activation == Activation::kLeakyRelu && !(l.leaky_slope > 0.0 && l.leaky_slope < 1.0)) {
      throw ConfigError("layer " + std::to_string(k) + ": leaky_relu slope must lie in (0, 1)");
    }
    if (k + 1 < layers.size() && l.output_width != layers[k + 1].input_width) {
      throw ConfigError("layer " + std::to_string(k) + " output width " +
                        std::to_string(l.output_width) + " does not match layer " +
                        std::to_string(k + 1) + " input width " +
                        std::to_string(layers[k + 1].input_width));
    }
  }
  if (role == Role::kDiscriminator &&
      (layers.back().activation != Activation::kSigmoid || layers.back().output_width != 1)) {
    throw ConfigError("discriminator head must be a single sigmoid unit");
  }
  if (role == Role::kGenerator && layers.back().activation != Activation::kLinear) {
    throw ConfigError("generator head must be linear");
  }
}

std::vector<LayerSpec> mlp_layers(std::size_t input_width, std::span<const std::size_t> hidden,
                                  std::size_t output_width, Activation hidden_activation,
                                  Activation head, double leaky_slope) {
  std::vector<LayerSpec> layers;
  std::size_t in = input_width;
  for (std::size_t width : hidden) {
    layers.push_back({in, width, hidden_activation, leaky_slope});
    in = width;
  }
  layers.push_back({in, output_width, head, leaky_slope});
  return layers;
}

MlpNetwork init_network(std::vector<LayerSpec> layers, std::uint64_t seed, Role role,
                        std::string_view stream_label) {
  validate_layers(layers, role);
  MlpNetwork net;
  net.role = role;
  net.params.assign(param_count(layers), 0.0);
  net.layers = std::move(layers);
  RngStream rng(seed, stream_label);
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const auto& l = net.layers[k];
    const double limit =
        std::sqrt(6.0 / static_cast<double>(l.input_width + l.output_width));
    double* w = net.weights(k).data;
    for (std::size_t i = 0; i < l.input_width * l.output_width; ++i) {
      w[i] = limit * (2.0 * rng.uniform() - 1.0);
    }
  }
  return net;
}

ForwardTrace forward(const MlpNetwork& net, const Matrix& batch) {
  if (batch.rows() == 0) throw InputError("forward: empty batch");
  if (batch.cols() != net.input_width()) {
    throw InputError("forward: batch has " + std::to_string(batch.cols()) +
                     " columns, network expects " + std::to_string(net.input_width()));
  }
  ForwardTrace trace;
  trace.input = batch;
  trace.pre.reserve(net.layers.size());
  trace.act.reserve(net.layers.size());
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const auto& layer = net.layers[k];
    const Matrix& in = k == 0 ? trace.input : trace.act[k - 1];
    Matrix pre(batch.rows(), layer.output_width);
    kernels::gemm_nn(in.view(), net.weights(k), pre.view());
    kernels::add_row_vector(pre.view(), net.bias(k));
    Matrix act(batch.rows(), layer.output_width);
    apply_activation(layer, pre, act);
    trace.pre.push_back(std::move(pre));
    trace.act.push_back(std::move(act));
  }
  return trace;
}

Matrix predict(const MlpNetwork& net, const Matrix& batch) {
  auto trace = forward(net, batch);
  return std::move(trace.act.back());
}

GradientBundle backward(const MlpNetwork& net, const ForwardTrace& trace, const Matrix& upstream,
                        BackwardOptions options) {
  if (trace.act.size() != net.layers.size()) {
    throw InputError("backward: trace does not belong to this network");
  }
  const Matrix& out = trace.output();
  if (upstream.rows() != out.rows() || upstream.cols() != out.cols()) {
    throw InputError("backward: upstream shape does not match the network output");
  }
  GradientBundle grads;
  if (options.param_grads) grads.param_grads.assign(net.params.size(), 0.0);

  Matrix delta = upstream;
  for (std::size_t k = net.layers.size(); k-- > 0;) {
    const auto& layer = net.layers[k];
    multiply_derivative(layer, trace.pre[k], trace.act[k], delta);
    const Matrix& in = k == 0 ? trace.input : trace.act[k - 1];
    if (options.param_grads) {
      MatView dw{grads.param_grads.data() + net.weight_offset(k), layer.input_width,
                 layer.output_width};
      kernels::gemm_tn(in.view(), delta.view(), dw);
      kernels::column_sums(delta.view(),
                           {grads.param_grads.data() + net.bias_offset(k), layer.output_width});
    }
    if (k > 0 || options.input_grads) {
      Matrix next(delta.rows(), layer.input_width);
      kernels::gemm_nt(delta.view(), net.weights(k), next.view());
      delta = std::move(next);
    }
  }
  if (options.input_grads) grads.input_grads = std::move(delta);
  return grads;
}

std::vector<double> input_gradient_norms(const MlpNetwork& net, const Matrix& points) {
  if (net.output_width() != 1) {
    throw ConfigError("input_gradient_norms requires a scalar-output network");
  }
  const auto trace = forward(net, points);
  const Matrix ones(points.rows(), 1, 1.0);
  const auto grads = backward(net, trace, ones, {.param_grads = false, .input_grads = true});
  std::vector<double> norms(points.rows());
  kernels::row_norms(grads.input_grads.view(), norms);
  return norms;
}

}  // namespace acgan::nn
