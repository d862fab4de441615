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

#include "acgan/gan.hpp"
#include "acgan/matrix.hpp"
#include "acgan/nn.hpp"

// Hedge allocation of mixture weights over the discriminator ensemble.
namespace acgan::curriculum {

enum class RewardKind { kQuality, kValue, kRawLoss };
enum class Variant { kAcgan, kGman, kUniform, kVanilla };

std::string_view to_string(RewardKind k);
std::string_view to_string(Variant v);
RewardKind parse_reward_kind(std::string_view s);  // "quality" | "value" | "raw_loss"
Variant parse_variant(std::string_view s);         // "acgan" | "gman" | "uniform" | "vanilla"

struct BanditConfig {
  double lambda = 15.0;
  double alpha = 0.01;
  std::uint64_t warmup = 45;
  std::size_t n = 3;
  RewardKind reward_kind = RewardKind::kQuality;
  Variant variant = Variant::kAcgan;

  // The settings actually used: uniform forces lambda = 0; gman forces
  // alpha = 1 and the raw value-function reward.
  BanditConfig effective() const;
  void validate() const;
  bool operator==(const BanditConfig&) const = default;
};

struct BanditState {
  std::vector<double> q;
  std::vector<double> pi;
  std::uint64_t t = 0;  // completed Q updates

  bool operator==(const BanditState&) const = default;
};

struct RewardSample {
  std::vector<double> r;
  std::uint64_t t = 0;
  RewardKind kind = RewardKind::kQuality;
};

// Q = 0, uniform pi.
BanditState initial_state(std::size_t n);

// Uniform when t <= warmup or lambda == 0, otherwise softmax(lambda * q)
// with the maximum subtracted first.
std::vector<double> policy_weights(std::span<const double> q, double lambda, std::uint64_t t,
                                   std::uint64_t warmup);

// Q_i <- alpha R_i + (1 - alpha) Q_i; t advances by one. Does not touch pi.
BanditState q_update(const BanditState& state, const RewardSample& reward, double alpha);

// mean D(G(z; now)) - mean D(G(z; prev)) on a shared z batch.
double reward_quality(const nn::MlpNetwork& d, const nn::MlpNetwork& gen_now,
                      const gan::ParamSnapshot& gen_prev, const Matrix& z);
// V(D, G(.; now)) - V(D, G(.; prev)). The real-data term cancels, so only the
// fake term is evaluated.
double reward_value(const nn::MlpNetwork& d, const nn::MlpNetwork& gen_now,
                    const gan::ParamSnapshot& gen_prev, const Matrix& z, const Matrix& real);
// V(D, G) itself.
double reward_raw_loss(const nn::MlpNetwork& d, const nn::MlpNetwork& gen, const Matrix& z,
                       const Matrix& real);

// All N rewards of one kind, evaluating each generator once on z.
// `real` is only read by the raw-loss reward.
std::vector<double> evaluate_rewards(const gan::Ensemble& ensemble, const nn::MlpNetwork& gen_now,
                                     const gan::ParamSnapshot& gen_prev, const Matrix& z,
                                     const Matrix& real, RewardKind kind);

}  // namespace acgan::curriculum
