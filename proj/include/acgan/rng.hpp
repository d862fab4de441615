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
#include <string_view>

#include "acgan/matrix.hpp"

namespace acgan {

// Counter-based random stream: draw i is a fixed hash of (key, i), where the
// key is derived from a seed and a text label. The whole state is two
// integers, so streams checkpoint trivially and labeled streams never share
// draws.
class RngStream {
 public:
  struct State {
    std::uint64_t key = 0;
    std::uint64_t counter = 0;
    bool operator==(const State&) const = default;
  };

  RngStream() = default;
  RngStream(std::uint64_t seed, std::string_view label);

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard normal (Box-Muller, two uniforms per draw).
  double normal();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  void fill_normal(Matrix& m, double stddev = 1.0);

  State state() const { return state_; }
  void restore(State s) { state_ = s; }

 private:
  State state_;
};

// The named streams one training run draws from.
struct RunStreams {
  RngStream data;        // real-sample minibatches
  RngStream prior;       // z for the update steps
  RngStream noise;       // discriminator input corruption
  RngStream reward;      // common random numbers for reward evaluation
  RngStream allocation;  // discriminator draws in sampled-allocation mode

  explicit RunStreams(std::uint64_t seed = 0);
};

}  // namespace acgan
