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

#include "acgan/optim.hpp"

#include <cmath>
#include <string>

#include "acgan/error.hpp"

namespace acgan::optim {

std::string_view to_string(Kind k) { return k == Kind::kAdam ? "adam" : "rmsprop"; }

Kind parse_kind(std::string_view s) {
  if (s == "adam") return Kind::kAdam;
  if (s == "rmsprop") return Kind::kRmsprop;
  throw ConfigError("unknown optimizer '" + std::string(s) + "'");
}

OptimizerState make_state(const Hyperparams& hp, std::size_t param_count) {
  OptimizerState s;
  s.hp = hp;
  if (hp.kind == Kind::kAdam) s.first_moment.assign(param_count, 0.0);
  s.second_moment.assign(param_count, 0.0);
  return s;
}

void step(OptimizerState& state, std::span<double> params, std::span<const double> grads,
          Direction direction) {
  const auto& hp = state.hp;
  if (params.size() != grads.size() || params.size() != state.second_moment.size() ||
      (hp.kind == Kind::kAdam && state.first_moment.size() != params.size())) {
    throw ConfigError("optimizer step: parameter, gradient and state lengths differ");
  }
  if (!(hp.lr > 0.0)) throw ConfigError("optimizer step: learning rate must be positive");
  for (double g : grads) {
    if (!std::isfinite(g)) throw NumericError("optimizer step: non-finite gradient");
  }

  const double sign = direction == Direction::kMaximize ? -1.0 : 1.0;
  const auto n = static_cast<std::ptrdiff_t>(params.size());
  state.step_count += 1;
  double* v = state.second_moment.data();

  if (hp.kind == Kind::kAdam) {
    const double t = static_cast<double>(state.step_count);
    const double correction1 = 1.0 - std::pow(hp.beta1, t);
    const double correction2 = 1.0 - std::pow(hp.beta2, t);
    double* m = state.first_moment.data();
#pragma omp parallel for simd schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double g = sign * grads[i];
      m[i] = hp.beta1 * m[i] + (1.0 - hp.beta1) * g;
      v[i] = hp.beta2 * v[i] + (1.0 - hp.beta2) * g * g;
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      params[i] -= hp.lr * m_hat / (std::sqrt(v_hat) + hp.eps);
    }
  } else {
#pragma omp parallel for simd schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double g = sign * grads[i];
      v[i] = hp.decay * v[i] + (1.0 - hp.decay) * g * g;
      params[i] -= hp.lr * g / (std::sqrt(v[i]) + hp.eps);
    }
  }
}

}  // namespace acgan::optim
