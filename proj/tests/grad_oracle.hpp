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

// Central-difference oracle for nn::backward on the scalar loss
// L = sum(upstream .* forward(net, x)).
//
// A coordinate whose +-h probe moves any ReLU / LeakyReLU pre-activation across
// zero, or moves a sigmoid output across its clamp, is skipped: the loss is not
// differentiable there and the difference quotient straddles two linear pieces.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "acgan/nn.hpp"
#include "acgan/rng.hpp"

namespace acgan::test {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

inline double weighted_sum(const Matrix& out, const Matrix& upstream) {
  double s = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) s += out.values()[i] * upstream.values()[i];
  return s;
}

// True when both traces sit on the same smooth piece of every layer. `b` may
// be the trace of the tail of `net` starting at layer `first`.
inline bool same_piece(const nn::MlpNetwork& net, const nn::ForwardTrace& a, const nn::ForwardTrace& b,
                       std::size_t first = 0) {
  for (std::size_t k = first; k < net.layers.size(); ++k) {
    const auto act = net.layers[k].activation;
    const auto pa = a.pre[k].values();
    const auto pb = b.pre[k - first].values();
    if (act == nn::Activation::kRelu || act == nn::Activation::kLeakyRelu) {
      for (std::size_t i = 0; i < pa.size(); ++i) {
        if ((pa[i] > 0.0) != (pb[i] > 0.0)) return false;
      }
    } else if (act == nn::Activation::kSigmoid) {
      const auto sa = a.act[k].values();
      const auto sb = b.act[k - first].values();
      for (std::size_t i = 0; i < sa.size(); ++i) {
        const bool ca = sa[i] <= nn::kSigmoidEps || sa[i] >= 1.0 - nn::kSigmoidEps;
        const bool cb = sb[i] <= nn::kSigmoidEps || sb[i] >= 1.0 - nn::kSigmoidEps;
        if (ca || cb) return false;
      }
    }
  }
  return true;
}

inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / (std::abs(numeric) + 1e-8);
}

// Fourth-order central difference of the loss along one coordinate:
//   (8 (L(+h) - L(-h)) - (L(+2h) - L(-2h))) / 12h.
// Returns nullopt when a probe leaves the smooth piece of `base`.
// `probe(d)` returns the trace of the perturbed network from layer `first` on.
template <typename Probe>
std::optional<double> central_difference(const nn::MlpNetwork& net, const nn::ForwardTrace& base,
                                         const Matrix& upstream, double h, Probe&& probe,
                                         std::size_t first = 0) {
  double values[4];
  const double offsets[4] = {2 * h, h, -h, -2 * h};
  for (int i = 0; i < 4; ++i) {
    const auto trace = probe(offsets[i]);
    if (!same_piece(net, base, trace, first)) return std::nullopt;
    values[i] = weighted_sum(trace.output(), upstream);
  }
  // Differences first, so equal probes give exactly zero.
  return (8 * (values[1] - values[2]) - (values[0] - values[3])) / (12 * h);
}

inline GradCheckResult check_gradients(const nn::MlpNetwork& net, const Matrix& x,
                                       const Matrix& upstream, double h = 1e-4) {
  GradCheckResult result;
  const auto base = nn::forward(net, x);
  const auto grads = nn::backward(net, base, upstream);
  auto record = [&](std::optional<double> numeric, double analytic) {
    if (!numeric) {
      ++result.skipped;
      return;
    }
    result.max_rel_error = std::max(result.max_rel_error, relative_error(analytic, *numeric));
    ++result.checked;
  };

  // A parameter of layer k only moves layers k and up, so the probe runs the
  // tail network on the unperturbed input of layer k.
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const std::vector<nn::LayerSpec> tail_layers(net.layers.begin() + k, net.layers.end());
    nn::MlpNetwork tail = nn::init_network(tail_layers, 0);
    const std::size_t offset = net.weight_offset(k);
    std::copy(net.params.begin() + offset, net.params.end(), tail.params.begin());
    const Matrix& input = k == 0 ? x : base.act[k - 1];
    const std::size_t end = net.bias_offset(k) + net.layers[k].output_width;
    for (std::size_t p = offset; p < end; ++p) {
      double& slot = tail.params[p - offset];
      const double keep = slot;
      record(central_difference(net, base, upstream, h,
                                [&](double d) {
                                  slot = keep + d;
                                  auto t = nn::forward(tail, input);
                                  slot = keep;
                                  return t;
                                },
                                k),
             grads.param_grads[p]);
    }
  }

  Matrix xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = xp.values()[i];
    record(central_difference(net, base, upstream, h,
                              [&](double d) {
                                xp.values()[i] = keep + d;
                                auto t = nn::forward(net, xp);
                                xp.values()[i] = keep;
                                return t;
                              }),
           grads.input_grads.values()[i]);
  }
  return result;
}

// Random architecture with at most `max_layers` layers of at most `max_width`
// units; activations cycle through every kind, the head included.
inline nn::MlpNetwork random_network(std::uint64_t seed, std::size_t max_layers = 4,
                                     std::size_t max_width = 64) {
  RngStream rng(seed, "random-network");
  constexpr nn::Activation kinds[] = {nn::Activation::kRelu, nn::Activation::kLeakyRelu,
                                      nn::Activation::kTanh, nn::Activation::kSigmoid,
                                      nn::Activation::kLinear};
  const std::size_t depth = 1 + rng.below(max_layers);
  std::vector<nn::LayerSpec> layers;
  std::size_t in = 1 + rng.below(max_width);
  for (std::size_t k = 0; k < depth; ++k) {
    const std::size_t out = 1 + rng.below(max_width);
    nn::LayerSpec spec{in, out, kinds[(seed + k) % 5], 0.05 + 0.9 * rng.uniform()};
    layers.push_back(spec);
    in = out;
  }
  return nn::init_network(layers, seed);
}

}  // namespace acgan::test
