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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace acgan::optim {

enum class Kind { kAdam, kRmsprop };
enum class Direction { kMinimize, kMaximize };

std::string_view to_string(Kind k);
Kind parse_kind(std::string_view s);

struct Hyperparams {
  Kind kind = Kind::kAdam;
  double lr = 2e-4;
  double beta1 = 0.5;    // Adam
  double beta2 = 0.999;  // Adam
  double decay = 0.9;    // RMSprop
  double eps = 1e-8;

  bool operator==(const Hyperparams&) const = default;
};

struct OptimizerState {
  Hyperparams hp;
  std::vector<double> first_moment;   // Adam m; unused by RMSprop
  std::vector<double> second_moment;  // Adam v / RMSprop running mean square
  std::uint64_t step_count = 0;

  bool operator==(const OptimizerState&) const = default;
};

OptimizerState make_state(const Hyperparams& hp, std::size_t param_count);

// One in-place update. Maximize negates the gradient before the usual
// descent update. Throws ConfigError on length mismatch or lr <= 0, and
// NumericError if any gradient entry is not finite (params untouched).
void step(OptimizerState& state, std::span<double> params, std::span<const double> grads,
          Direction direction);

}  // namespace acgan::optim
