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

#include "acgan/curriculum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acgan/error.hpp"

namespace acgan::curriculum {
namespace {

double mean(const Matrix& m) {
  double s = 0.0;
  for (double v : m.values()) s += v;
  return s / static_cast<double>(m.size());
}

double mean_log_complement(const Matrix& m) {
  double s = 0.0;
  for (double v : m.values()) s += std::log(1.0 - v);
  return s / static_cast<double>(m.size());
}

void check_z(const Matrix& z) {
  if (z.rows() == 0) throw InputError("reward evaluation: empty z batch");
}

}  // namespace

std::string_view to_string(RewardKind k) {
  switch (k) {
    case RewardKind::kQuality: return "quality";
    case RewardKind::kValue: return "value";
    case RewardKind::kRawLoss: return "raw_loss";
  }
  return "quality";
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kAcgan: return "acgan";
    case Variant::kGman: return "gman";
    case Variant::kUniform: return "uniform";
    case Variant::kVanilla: return "vanilla";
  }
  return "acgan";
}

RewardKind parse_reward_kind(std::string_view s) {
  if (s == "quality") return RewardKind::kQuality;
  if (s == "value") return RewardKind::kValue;
  if (s == "raw_loss") return RewardKind::kRawLoss;
  throw ConfigError("unknown reward kind '" + std::string(s) + "'");
}

Variant parse_variant(std::string_view s) {
  if (s == "acgan") return Variant::kAcgan;
  if (s == "gman") return Variant::kGman;
  if (s == "uniform") return Variant::kUniform;
  if (s == "vanilla") return Variant::kVanilla;
  throw ConfigError("unknown variant '" + std::string(s) + "'");
}

BanditConfig BanditConfig::effective() const {
  BanditConfig c = *this;
  if (variant == Variant::kUniform) c.lambda = 0.0;
  if (variant == Variant::kGman) {
    c.alpha = 1.0;
    c.reward_kind = RewardKind::kRawLoss;
  }
  return c;
}

void BanditConfig::validate() const {
  if (n == 0) throw ConfigError("bandit: at least one discriminator required");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("bandit: lambda must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("bandit: alpha must lie in (0, 1]");
  if (variant == Variant::kVanilla && n != 1) {
    throw ConfigError("bandit: the vanilla variant uses exactly one discriminator");
  }
}

BanditState initial_state(std::size_t n) {
  if (n == 0) throw ConfigError("bandit: at least one discriminator required");
  return {std::vector<double>(n, 0.0), std::vector<double>(n, 1.0 / static_cast<double>(n)), 0};
}

std::vector<double> policy_weights(std::span<const double> q, double lambda, std::uint64_t t,
                                   std::uint64_t warmup) {
  if (q.empty()) throw ConfigError("policy_weights: empty Q vector");
  if (!(lambda >= 0.0)) throw ConfigError("policy_weights: lambda must be >= 0");
  const std::size_t n = q.size();
  std::vector<double> pi(n);
  if (t <= warmup || lambda == 0.0) {
    std::fill(pi.begin(), pi.end(), 1.0 / static_cast<double>(n));
    return pi;
  }
  const double top = *std::max_element(q.begin(), q.end());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = std::exp(lambda * (q[i] - top));
    total += pi[i];
  }
  for (double& p : pi) p /= total;
  return pi;
}

BanditState q_update(const BanditState& state, const RewardSample& reward, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("q_update: alpha must lie in (0, 1]");
  if (reward.r.size() != state.q.size()) throw ConfigError("q_update: reward length mismatch");
  for (std::size_t i = 0; i < reward.r.size(); ++i) {
    if (!std::isfinite(reward.r[i])) {
      throw NumericError("non-finite reward for discriminator " + std::to_string(i + 1));
    }
  }
  BanditState next = state;
  for (std::size_t i = 0; i < next.q.size(); ++i) {
    next.q[i] = alpha * reward.r[i] + (1.0 - alpha) * state.q[i];
  }
  next.t = state.t + 1;
  return next;
}

double reward_quality(const nn::MlpNetwork& d, const nn::MlpNetwork& gen_now,
                      const gan::ParamSnapshot& gen_prev, const Matrix& z) {
  check_z(z);
  const auto prev = gan::snapshot_network(gen_now, gen_prev);
  return mean(nn::predict(d, nn::predict(gen_now, z))) -
         mean(nn::predict(d, nn::predict(prev, z)));
}

double reward_value(const nn::MlpNetwork& d, const nn::MlpNetwork& gen_now,
                    const gan::ParamSnapshot& gen_prev, const Matrix& z, const Matrix& real) {
  check_z(z);
  if (real.rows() == 0) throw InputError("reward_value: empty real batch");
  const auto prev = gan::snapshot_network(gen_now, gen_prev);
  return mean_log_complement(nn::predict(d, nn::predict(gen_now, z))) -
         mean_log_complement(nn::predict(d, nn::predict(prev, z)));
}

double reward_raw_loss(const nn::MlpNetwork& d, const nn::MlpNetwork& gen, const Matrix& z,
                       const Matrix& real) {
  check_z(z);
  return gan::value_function(d, real, nn::predict(gen, z));
}

std::vector<double> evaluate_rewards(const gan::Ensemble& ensemble, const nn::MlpNetwork& gen_now,
                                     const gan::ParamSnapshot& gen_prev, const Matrix& z,
                                     const Matrix& real, RewardKind kind) {
  check_z(z);
  std::vector<double> r(ensemble.size());
  const Matrix fake_now = nn::predict(gen_now, z);
  if (kind == RewardKind::kRawLoss) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = gan::value_function(ensemble.discriminators[i], real, fake_now);
    }
    return r;
  }
  const Matrix fake_prev = nn::predict(gan::snapshot_network(gen_now, gen_prev), z);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& d = ensemble.discriminators[i];
    const Matrix now = nn::predict(d, fake_now);
    const Matrix prev = nn::predict(d, fake_prev);
    r[i] = kind == RewardKind::kQuality ? mean(now) - mean(prev)
                                        : mean_log_complement(now) - mean_log_complement(prev);
  }
  return r;
}

}  // namespace acgan::curriculum
