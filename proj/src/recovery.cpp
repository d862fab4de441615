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

#include <algorithm>

#include "acgan/error.hpp"
#include "acgan/io.hpp"
#include "acgan/trainer.hpp"
#include "json.hpp"

namespace acgan {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Single-discriminator setup using the strongest architecture of the ensemble.
RunConfig single_discriminator(const RunConfig& base, const std::string& subdir) {
  RunConfig c = base;
  c.variant = curriculum::Variant::kVanilla;
  c.discriminator_hidden = {base.discriminator_hidden.back()};
  c.discriminator_activations = {base.discriminator_activations.back()};
  c.bandit.n = 1;
  c.bandit.variant = curriculum::Variant::kVanilla;
  c.bandit.warmup = 15;
  c.noise.reset();
  c.output_dir = (fs::path(base.output_dir) / subdir).string();
  return c;
}

std::size_t count_covered(const metrics::CoverageReport& report, std::size_t min_count,
                          const std::vector<std::size_t>& modes, bool inside) {
  std::size_t covered = 0;
  for (std::size_t m = 0; m < report.per_mode_counts.size(); ++m) {
    const bool listed = std::find(modes.begin(), modes.end(), m) != modes.end();
    if (listed == inside && report.per_mode_counts[m] >= min_count) ++covered;
  }
  return covered;
}

std::vector<double> field_means(const Trainer& trainer) {
  std::vector<double> means;
  for (const auto& f : trainer.gradient_fields()) means.push_back(metrics::mean_value(f));
  return means;
}

json phase_json(const Trainer& trainer, const EvalReport& report, const std::string& initial_hash) {
  return {{"output_dir", trainer.output_dir().string()},
          {"initial_generator_hash", initial_hash},
          {"modes_covered", report.coverage.modes_covered},
          {"hq_fraction", report.coverage.hq_fraction},
          {"per_mode_counts", report.coverage.per_mode_counts},
          {"fd", report.fd},
          {"gradfield_mean", field_means(trainer)}};
}

}  // namespace

RecoveryResult run_mode_recovery(const RunConfig& config) {
  if (config.dataset != Dataset::kRing8) throw ConfigError("recover-modes: dataset must be ring8");
  config.validate();
  RecoveryResult result;

  RunConfig pre = single_discriminator(config, "pretrain");
  pre.iterations = config.pretrain_iterations;
  pre.train_modes = config.pretrain_modes;
  pre.gradfield_interval = 0;
  pre.checkpoint_interval = 0;
  Trainer pretrain(pre);
  pretrain.run();
  result.pretrain = pretrain.finish();
  const std::vector<double> pretrained = pretrain.state().generator.net.params;
  result.pretrained_hash = io::params_hash(pretrained);
  const EvalReport pre_report = pretrain.evaluate();
  result.pretrain_covered = count_covered(pre_report.coverage, config.min_count, config.pretrain_modes, true);
  result.pretrain_covered_outside =
      count_covered(pre_report.coverage, config.min_count, config.pretrain_modes, false);

  RunConfig van = single_discriminator(config, "vanilla");
  Trainer vanilla(van, pretrained);
  const std::string vanilla_hash = io::params_hash(vanilla.state().generator.net.params);
  vanilla.run();
  result.vanilla = vanilla.finish();
  const EvalReport van_report = vanilla.evaluate();
  result.vanilla_covered = van_report.coverage.modes_covered;
  result.vanilla_gradfield_means = field_means(vanilla);

  RunConfig ac = config;
  ac.output_dir = (fs::path(config.output_dir) / "acgan").string();
  Trainer acgan(ac, pretrained);
  const std::string acgan_hash = io::params_hash(acgan.state().generator.net.params);
  acgan.run();
  result.acgan = acgan.finish();
  const EvalReport ac_report = acgan.evaluate();
  result.acgan_covered = ac_report.coverage.modes_covered;
  result.acgan_gradfield_means = field_means(acgan);

  json summary;
  summary["status"] = "completed";
  summary["seed"] = config.seed;
  summary["pretrained_generator_hash"] = result.pretrained_hash;
  summary["shared_initialization"] = vanilla_hash == result.pretrained_hash && acgan_hash == result.pretrained_hash;
  summary["pretrain"] = phase_json(pretrain, pre_report, "");
  summary["pretrain"]["modes"] = config.pretrain_modes;
  summary["pretrain"]["covered_inside"] = result.pretrain_covered;
  summary["pretrain"]["covered_outside"] = result.pretrain_covered_outside;
  summary["vanilla"] = phase_json(vanilla, van_report, vanilla_hash);
  summary["acgan"] = phase_json(acgan, ac_report, acgan_hash);
  result.summary = fs::path(config.output_dir) / "summary.json";
  io::write_file(result.summary, summary.dump(2) + "\n");
  return result;
}

}  // namespace acgan
