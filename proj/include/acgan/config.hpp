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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acgan/curriculum.hpp"
#include "acgan/gan.hpp"
#include "acgan/nn.hpp"
#include "acgan/optim.hpp"
#include "acgan/synth_data.hpp"

namespace acgan {

enum class Dataset { kRing8, kGrid25 };
enum class Allocation { kMixture, kSample };

std::string_view to_string(Dataset d);
std::string_view to_string(Allocation a);

// Full description of one experiment. Files use one `key = value` pair per
// line; `#` starts a comment. Lists are comma separated, and the
// discriminator architecture list separates networks with `;`.
struct RunConfig {
  Dataset dataset = Dataset::kGrid25;
  curriculum::Variant variant = curriculum::Variant::kAcgan;

  std::vector<std::size_t> generator_hidden;
  nn::Activation generator_activation = nn::Activation::kRelu;
  std::vector<std::vector<std::size_t>> discriminator_hidden;  // weakest first
  std::vector<nn::Activation> discriminator_activations;
  double leaky_slope = nn::kDefaultLeakySlope;
  std::size_t prior_dim = 2;

  optim::Hyperparams optimizer;
  curriculum::BanditConfig bandit;
  Allocation allocation = Allocation::kMixture;
  std::optional<gan::NoiseSchedule> noise;

  std::size_t batch_size = 192;
  std::uint64_t iterations = 7500;
  std::uint64_t epoch_iterations = 500;
  std::uint64_t eval_interval = 500;
  std::size_t eval_samples = 10000;
  std::size_t reward_batch = 512;
  double hq_multiplier = 3.0;
  std::size_t min_count = 1;
  std::size_t gradfield_resolution = 200;
  double gradfield_extent = 2.0;
  std::uint64_t gradfield_interval = 0;  // 0: final iteration only
  bool sample_dump = true;
  std::uint64_t checkpoint_interval = 0;  // 0: final checkpoint only

  double ring_radius = data::kRingRadius;
  double grid_spacing = data::kGridSpacing;
  double mode_std = data::kModeStd;
  std::vector<std::size_t> train_modes;  // empty: every mode

  std::vector<std::size_t> pretrain_modes{2, 3};
  std::uint64_t pretrain_iterations = 2000;

  std::uint64_t seed = 0;
  std::string output_dir;

  std::size_t num_discriminators() const { return discriminator_hidden.size(); }
  data::ModeSpec mode_spec() const;
  std::vector<nn::LayerSpec> generator_layers() const;
  std::vector<nn::LayerSpec> discriminator_layers(std::size_t i) const;

  // Throws ConfigError naming the offending key.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

using KeyValues = std::map<std::string, std::string>;

// Parses `key = value` text into a map. Unknown keys are rejected later by
// resolve_config.
KeyValues parse_key_values(const std::string& text);

// Builds a config: dataset and variant defaults first, then the given keys,
// then derived defaults (warmup = 15 N, dataset learning rate, dataset
// architectures) for anything left unspecified.
RunConfig resolve_config(const KeyValues& kv);

RunConfig parse_config_text(const std::string& text, const KeyValues& overrides = {});
RunConfig parse_config(const std::filesystem::path& path, const KeyValues& overrides = {});

// Every field written explicitly; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);
KeyValues to_key_values(const RunConfig& config);

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace acgan
