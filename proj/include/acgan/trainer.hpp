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
#include <optional>
#include <span>
#include <vector>

#include "acgan/checkpoint.hpp"
#include "acgan/config.hpp"
#include "acgan/io.hpp"
#include "acgan/metrics.hpp"

namespace acgan {

struct RunArtifacts {
  std::filesystem::path output_dir;
  std::filesystem::path policy_log;
  std::filesystem::path policy_average_log;
  std::filesystem::path metrics_log;
  std::filesystem::path summary;
  std::filesystem::path final_checkpoint;
  std::vector<std::filesystem::path> sample_dumps;
  std::vector<std::filesystem::path> gradfield_dumps;
  std::vector<std::filesystem::path> checkpoints;
};

struct EvalReport {
  double fd = 0.0;
  metrics::CoverageReport coverage;
  Matrix samples;
};

// Fixed per seed: real points and prior draws used for every evaluation.
struct EvalSet {
  Matrix real;
  Matrix z;
  metrics::MomentPair real_moments;
};

EvalSet make_eval_set(const RunConfig& config);
// FD against the real set and coverage of G(z) over the configured modes.
EvalReport evaluate_generator(const nn::MlpNetwork& gen, const EvalSet& set, const RunConfig& config);

// Curriculum read-out from the logged weights, averaged over consecutive
// 200-iteration blocks.
struct CurriculumDiagnostic {
  std::size_t argmax_changes_after_warmup = 0;
  double final_max_deviation = 0.0;  // max_i mean pi_i over the last 10% minus 1/N
  bool argmax_changed() const { return argmax_changes_after_warmup > 0; }
  bool converged_to_uniform() const { return final_max_deviation < 0.2; }
};

inline constexpr std::uint64_t kPolicyAverageWindow = 200;

CurriculumDiagnostic curriculum_diagnostic(std::span<const double> pi_history, std::size_t n,
                                           std::uint64_t warmup);

// Runs the training loop for one config:
//   1. discriminator update on the mixture weights
//   2. generator update on the mixture weights
//   3. from t = warmup on: rewards, Q update, next weights
// Every iteration appends one row to policy.csv (the weights row is the one
// used during that iteration); every eval_interval one row to metrics.csv.
class Trainer {
 public:
  // Fresh run. `generator_init`, when given, replaces the initial generator
  // parameters.
  explicit Trainer(RunConfig config,
                   std::optional<std::vector<double>> generator_init = std::nullopt);
  // Continues a run from a checkpoint. The directory holding the checkpoint
  // is the run directory; its logs are cut back to the checkpoint and extended.
  static Trainer resume(const std::filesystem::path& checkpoint_path);

  // One training iteration. On a non-finite value a crash checkpoint and
  // abort.json are written before the NumericError propagates.
  void step();
  // Steps until `until` iterations are complete (default: the configured
  // total), honoring checkpoint_interval.
  void run(std::optional<std::uint64_t> until = std::nullopt);
  // Final dumps, checkpoint and summary.json.
  RunArtifacts finish();

  EvalReport evaluate() const;
  std::vector<Matrix> gradient_fields() const;
  metrics::GridSpec gradfield_grid() const;

  Checkpoint checkpoint() const;
  std::filesystem::path save_checkpoint(const std::string& name);

  const RunConfig& config() const { return config_; }
  const TrainingState& state() const { return state_; }
  std::filesystem::path output_dir() const { return config_.output_dir; }

 private:
  Trainer(RunConfig config, TrainingState state, bool resumed);
  void prepare_outputs(bool resumed);
  void do_step(std::uint64_t t);
  void record_eval(std::uint64_t t);
  void dump_gradfields(std::uint64_t t);
  void write_policy_average() const;
  void abort_run(std::uint64_t t, const std::string& message);

  RunConfig config_;
  TrainingState state_;
  data::ModeSpec modes_;
  EvalSet eval_set_;
  io::CsvLog policy_log_;
  io::CsvLog metrics_log_;
  RunArtifacts artifacts_;
};

TrainingState initial_training_state(const RunConfig& config,
                                     std::optional<std::vector<double>> generator_init = std::nullopt);

// Fresh run, or a continuation when `resume_from` names a checkpoint.
RunArtifacts run_training(const RunConfig& config,
                          const std::optional<std::filesystem::path>& resume_from = std::nullopt);

// Pretrains a generator on `pretrain_modes` of the ring with one
// discriminator, then trains (a) vanilla with a fresh strongest discriminator
// and (b) acGAN with the configured ensemble, both from the same pretrained
// generator. Outputs land in pretrain/, vanilla/ and acgan/ under output_dir.
struct RecoveryResult {
  RunArtifacts pretrain;
  RunArtifacts vanilla;
  RunArtifacts acgan;
  std::string pretrained_hash;
  std::size_t pretrain_covered = 0;
  std::size_t pretrain_covered_outside = 0;
  std::size_t vanilla_covered = 0;
  std::size_t acgan_covered = 0;
  std::vector<double> acgan_gradfield_means;
  std::vector<double> vanilla_gradfield_means;
  std::filesystem::path summary;
};

RecoveryResult run_mode_recovery(const RunConfig& config);

// Independent runs, one per seed, under output_dir/seed_<s>. With jobs > 1
// the runs execute concurrently.
std::vector<RunArtifacts> run_sweep(const RunConfig& config, std::span<const std::uint64_t> seeds,
                                    std::size_t jobs = 1);

}  // namespace acgan
