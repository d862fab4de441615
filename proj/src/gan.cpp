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

#include "acgan/gan.hpp"

#include <cmath>
#include <string>

#include "acgan/error.hpp"

namespace acgan::gan {
namespace {

double mean_log(const Matrix& probs) {
  double s = 0.0;
  for (double p : probs.values()) s += std::log(p);
  return s / static_cast<double>(probs.size());
}

double mean_log_complement(const Matrix& probs) {
  double s = 0.0;
  for (double p : probs.values()) s += std::log(1.0 - p);
  return s / static_cast<double>(probs.size());
}

std::size_t shard_size(std::size_t rows, std::size_t n, const char* what) {
  if (rows == 0) throw InputError(std::string(what) + ": empty batch");
  if (rows % n != 0) {
    throw ConfigError(std::string(what) + ": batch of " + std::to_string(rows) +
                      " rows does not split evenly across " + std::to_string(n) +
                      " discriminators");
  }
  return rows / n;
}

}  // namespace

void validate(const Ensemble& ensemble) {
  if (ensemble.size() == 0) throw ConfigError("ensemble needs at least one discriminator");
  if (ensemble.optimizers.size() != ensemble.size()) {
    throw ConfigError("ensemble: one optimizer state per discriminator required");
  }
  for (const auto& d : ensemble.discriminators) nn::validate_layers(d.layers, nn::Role::kDiscriminator);
}

void validate_weights(std::span<const double> weights, std::size_t n) {
  if (weights.size() != n) throw ConfigError("mixture weights: one weight per discriminator required");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ConfigError("mixture weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("mixture weights must sum to 1");
}

double value_function(const nn::MlpNetwork& d, const Matrix& real, const Matrix& fake) {
  if (real.rows() == 0 || fake.rows() == 0) throw InputError("value_function: empty batch");
  return mean_log(nn::predict(d, real)) + mean_log_complement(nn::predict(d, fake));
}

std::vector<double> discriminator_update(Ensemble& ensemble, std::span<const double> weights,
                                         const Matrix& real, const Matrix& z,
                                         const GeneratorHandle& gen, const NoiseSchedule* noise,
                                         std::uint64_t t, RngStream* noise_rng) {
  const std::size_t n = ensemble.size();
  validate_weights(weights, n);
  const std::size_t real_shard = shard_size(real.rows(), n, "discriminator_update (real)");
  const std::size_t fake_shard = shard_size(z.rows(), n, "discriminator_update (z)");
  if (noise != nullptr) {
    if (noise->sigmas.size() != n) throw ConfigError("noise schedule: one sigma per discriminator required");
    if (noise_rng == nullptr) throw ConfigError("noise schedule given without a random stream");
  }

  // Fakes come from the current generator; nothing flows back into it.
  const Matrix fake = nn::predict(gen.net, z);

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix real_i = real.slice_rows(i * real_shard, real_shard);
    Matrix fake_i = fake.slice_rows(i * fake_shard, fake_shard);
    if (noise != nullptr && noise->sigmas[i] > 0.0) {
      real_i = corrupt_inputs(real_i, noise->sigmas[i], t, noise->decay, *noise_rng);
      fake_i = corrupt_inputs(fake_i, noise->sigmas[i], t, noise->decay, *noise_rng);
    }
    auto& d = ensemble.discriminators[i];
    const Matrix joint = Matrix::vstack(real_i, fake_i);
    const auto trace = nn::forward(d, joint);
    const Matrix& probs = trace.output();

    double log_real = 0.0;
    double log_fake = 0.0;
    for (std::size_t r = 0; r < real_shard; ++r) log_real += std::log(probs(r, 0));
    for (std::size_t r = 0; r < fake_shard; ++r) log_fake += std::log(1.0 - probs(real_shard + r, 0));
    values[i] = log_real / static_cast<double>(real_shard) +
                log_fake / static_cast<double>(fake_shard);
    if (!std::isfinite(values[i])) {
      throw NumericError("non-finite value function at discriminator " + std::to_string(i + 1));
    }

    const double pi = weights[i];
    if (pi == 0.0) continue;

    // d(pi * V)/dD at each row.
    Matrix upstream(joint.rows(), 1);
    const double real_scale = pi / static_cast<double>(real_shard);
    const double fake_scale = pi / static_cast<double>(fake_shard);
    for (std::size_t r = 0; r < real_shard; ++r) upstream(r, 0) = real_scale / probs(r, 0);
    for (std::size_t r = 0; r < fake_shard; ++r) {
      upstream(real_shard + r, 0) = -fake_scale / (1.0 - probs(real_shard + r, 0));
    }
    const auto grads =
        nn::backward(d, trace, upstream, {.param_grads = true, .input_grads = false});
    try {
      optim::step(ensemble.optimizers[i], d.params, grads.param_grads, optim::Direction::kMaximize);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " at discriminator " + std::to_string(i + 1));
    }
  }
  return values;
}

double generator_update(GeneratorHandle& gen, const Ensemble& ensemble,
                        std::span<const double> weights, const Matrix& z) {
  const std::size_t n = ensemble.size();
  validate_weights(weights, n);
  const std::size_t shard = shard_size(z.rows(), n, "generator_update");

  const auto g_trace = nn::forward(gen.net, z);
  const Matrix& fake = g_trace.output();
  Matrix fake_grads(fake.rows(), fake.cols());
  double objective = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    const double pi = weights[i];
    if (pi == 0.0) continue;
    const auto& d = ensemble.discriminators[i];
    const Matrix fake_i = fake.slice_rows(i * shard, shard);
    const auto d_trace = nn::forward(d, fake_i);
    const Matrix& probs = d_trace.output();

    double term = 0.0;
    for (double p : probs.values()) term += std::log(p);
    term /= static_cast<double>(shard);
    if (!std::isfinite(term)) {
      throw NumericError("non-finite generator objective at discriminator " + std::to_string(i + 1));
    }
    objective += pi * term;

    Matrix upstream(shard, 1);
    const double scale = pi / static_cast<double>(shard);
    for (std::size_t r = 0; r < shard; ++r) upstream(r, 0) = scale / probs(r, 0);
    const auto grads =
        nn::backward(d, d_trace, upstream, {.param_grads = false, .input_grads = true});
    for (std::size_t r = 0; r < shard; ++r) {
      for (std::size_t c = 0; c < fake.cols(); ++c) {
        fake_grads(i * shard + r, c) = grads.input_grads(r, c);
      }
    }
  }

  const auto g_grads =
      nn::backward(gen.net, g_trace, fake_grads, {.param_grads = true, .input_grads = false});
  try {
    optim::step(gen.optimizer, gen.net.params, g_grads.param_grads, optim::Direction::kMaximize);
  } catch (const NumericError& e) {
    throw NumericError(std::string(e.what()) + " in the generator");
  }
  return objective;
}

double generator_objective(const nn::MlpNetwork& gen, const Ensemble& ensemble,
                           std::span<const double> weights, const Matrix& z) {
  const std::size_t n = ensemble.size();
  validate_weights(weights, n);
  const std::size_t shard = shard_size(z.rows(), n, "generator_objective");
  const Matrix fake = nn::predict(gen, z);
  double objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] == 0.0) continue;
    objective += weights[i] * mean_log(nn::predict(ensemble.discriminators[i],
                                                   fake.slice_rows(i * shard, shard)));
  }
  return objective;
}

ParamSnapshot snapshot(const GeneratorHandle& gen, std::uint64_t t) {
  return {gen.net.params, t};
}

void restore(GeneratorHandle& gen, const ParamSnapshot& snap) {
  if (snap.params.size() != gen.net.params.size()) {
    throw ConfigError("snapshot does not match the generator's parameter count");
  }
  gen.net.params = snap.params;
}

nn::MlpNetwork snapshot_network(const nn::MlpNetwork& gen, const ParamSnapshot& snap) {
  if (snap.params.size() != gen.params.size()) {
    throw ConfigError("snapshot does not match the generator's parameter count");
  }
  nn::MlpNetwork net = gen;
  net.params = snap.params;
  return net;
}

double noise_std(double sigma0, std::uint64_t t, double decay) {
  return sigma0 * std::exp(-static_cast<double>(t) / decay);
}

Matrix corrupt_inputs(const Matrix& batch, double sigma0, std::uint64_t t, double decay,
                      RngStream& rng) {
  if (sigma0 < 0.0) throw ConfigError("noise sigma must be non-negative");
  if (!(decay > 0.0)) throw ConfigError("noise decay constant must be positive");
  Matrix out = batch;
  const double sd = noise_std(sigma0, t, decay);
  if (sd == 0.0) return out;
  for (double& v : out.values()) v += sd * rng.normal();
  return out;
}

}  // namespace acgan::gan
