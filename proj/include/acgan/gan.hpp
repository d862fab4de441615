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
#include <vector>

#include "acgan/matrix.hpp"
#include "acgan/nn.hpp"
#include "acgan/optim.hpp"
#include "acgan/rng.hpp"

namespace acgan::gan {

// Discriminators ordered weakest (fewest layers) first, each with its own
// optimizer state.
struct Ensemble {
  std::vector<nn::MlpNetwork> discriminators;
  std::vector<optim::OptimizerState> optimizers;

  std::size_t size() const { return discriminators.size(); }
  bool operator==(const Ensemble&) const = default;
};

struct GeneratorHandle {
  nn::MlpNetwork net;
  optim::OptimizerState optimizer;
  std::size_t prior_dim = 0;

  bool operator==(const GeneratorHandle&) const = default;
};

struct ParamSnapshot {
  std::vector<double> params;
  std::uint64_t t = 0;

  bool operator==(const ParamSnapshot&) const = default;
};

// Per-discriminator input noise: std sigma_i * exp(-t / decay) at step t.
struct NoiseSchedule {
  std::vector<double> sigmas;
  double decay = 1.0;

  bool operator==(const NoiseSchedule&) const = default;
};

// Checks N >= 1, matching optimizer count, and discriminator heads.
void validate(const Ensemble& ensemble);
// Throws ConfigError unless weights has one non-negative entry per
// discriminator summing to 1 within 1e-9.
void validate_weights(std::span<const double> weights, std::size_t n);

// mean log D(real) + mean log(1 - D(fake)), with clamped D.
double value_function(const nn::MlpNetwork& d, const Matrix& real, const Matrix& fake);

// One ascent step for every discriminator on pi_i * V(D_i, G). The real batch
// and the fakes G(z) are cut into N equal contiguous shards; D_i sees shard i,
// corrupted with noise when `noise` is given. A discriminator with pi_i == 0
// is left untouched, optimizer state included. Returns V(D_i, .) per shard,
// measured before the step.
std::vector<double> discriminator_update(Ensemble& ensemble, std::span<const double> weights,
                                         const Matrix& real, const Matrix& z,
                                         const GeneratorHandle& gen,
                                         const NoiseSchedule* noise = nullptr,
                                         std::uint64_t t = 0, RngStream* noise_rng = nullptr);

// One ascent step for the generator on sum_i pi_i mean log D_i(G(z_i)),
// z cut into N shards. Returns the objective before the step.
double generator_update(GeneratorHandle& gen, const Ensemble& ensemble,
                        std::span<const double> weights, const Matrix& z);

// sum_i pi_i mean log D_i(G(z_i)) without stepping.
double generator_objective(const nn::MlpNetwork& gen, const Ensemble& ensemble,
                           std::span<const double> weights, const Matrix& z);

ParamSnapshot snapshot(const GeneratorHandle& gen, std::uint64_t t);
void restore(GeneratorHandle& gen, const ParamSnapshot& snap);
// Copy of the generator network carrying the snapshot parameters.
nn::MlpNetwork snapshot_network(const nn::MlpNetwork& gen, const ParamSnapshot& snap);

double noise_std(double sigma0, std::uint64_t t, double decay);
// batch + N(0, noise_std(sigma0, t, decay)^2) elementwise.
Matrix corrupt_inputs(const Matrix& batch, double sigma0, std::uint64_t t, double decay,
                      RngStream& rng);

}  // namespace acgan::gan
