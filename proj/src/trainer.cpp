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

#include "acgan/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "acgan/error.hpp"
#include "acgan/io.hpp"
#include "json.hpp"

namespace acgan {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string csv_header(std::size_t n) {
  std::string h = "iter";
  for (const char* prefix : {"r_", "q_", "pi_"}) {
    for (std::size_t i = 1; i <= n; ++i) h += "," + std::string(prefix) + std::to_string(i);
  }
  return h;
}

std::optional<std::span<const std::size_t>> mode_subset(const std::vector<std::size_t>& modes) {
  if (modes.empty()) return std::nullopt;
  return std::span<const std::size_t>(modes);
}

metrics::GridSpec histogram_grid(const RunConfig& c) {
  const double extent = c.dataset == Dataset::kRing8 ? c.ring_radius + 0.5 : 2.0 * c.grid_spacing + 1.0;
  return {-extent, extent, -extent, extent, 100};
}

void check_finite(const Matrix& m, const char* what) {
  for (double v : m.values()) {
    if (!std::isfinite(v)) throw NumericError(std::string("non-finite values in ") + what);
  }
}

}  // namespace

CurriculumDiagnostic curriculum_diagnostic(std::span<const double> pi_history, std::size_t n,
                                           std::uint64_t warmup) {
  CurriculumDiagnostic diag;
  if (n == 0 || pi_history.empty()) return diag;
  const std::size_t rows = pi_history.size() / n;
  const std::size_t window = kPolicyAverageWindow;

  std::optional<std::size_t> last_argmax;
  for (std::size_t start = 0; start + window <= rows; start += window) {
    // Iterations start+1 .. start+window; only blocks wholly past warm-up count.
    if (start + 1 <= warmup) continue;
    std::vector<double> avg(n, 0.0);
    for (std::size_t r = start; r < start + window; ++r) {
      for (std::size_t i = 0; i < n; ++i) avg[i] += pi_history[r * n + i];
    }
    const auto argmax =
        static_cast<std::size_t>(std::max_element(avg.begin(), avg.end()) - avg.begin());
    if (last_argmax && *last_argmax != argmax) ++diag.argmax_changes_after_warmup;
    last_argmax = argmax;
  }

  const std::size_t tail_start = rows - std::max<std::size_t>(1, rows / 10);
  std::vector<double> tail(n, 0.0);
  for (std::size_t r = tail_start; r < rows; ++r) {
    for (std::size_t i = 0; i < n; ++i) tail[i] += pi_history[r * n + i];
  }
  const double count = static_cast<double>(rows - tail_start);
  double top = 0.0;
  for (double v : tail) top = std::max(top, v / count);
  diag.final_max_deviation = top - 1.0 / static_cast<double>(n);
  return diag;
}

TrainingState initial_training_state(const RunConfig& config,
                                     std::optional<std::vector<double>> generator_init) {
  config.validate();
  TrainingState s;
  s.streams = RunStreams(config.seed);
  s.generator.prior_dim = config.prior_dim;
  s.generator.net =
      nn::init_network(config.generator_layers(), config.seed, nn::Role::kGenerator, "init/generator");
  if (generator_init) {
    if (generator_init->size() != s.generator.net.params.size()) {
      throw ConfigError("initial generator parameters do not match the generator architecture");
    }
    s.generator.net.params = std::move(*generator_init);
  }
  s.generator.optimizer = optim::make_state(config.optimizer, s.generator.net.params.size());
  for (std::size_t i = 0; i < config.num_discriminators(); ++i) {
    auto d = nn::init_network(config.discriminator_layers(i), config.seed, nn::Role::kDiscriminator,
                              "init/d" + std::to_string(i + 1));
    s.ensemble.optimizers.push_back(optim::make_state(config.optimizer, d.params.size()));
    s.ensemble.discriminators.push_back(std::move(d));
  }
  s.bandit = curriculum::initial_state(config.num_discriminators());
  return s;
}

Trainer::Trainer(RunConfig config, std::optional<std::vector<double>> generator_init)
    : Trainer(config, initial_training_state(config, std::move(generator_init)), false) {}

Trainer::Trainer(RunConfig config, TrainingState state, bool resumed)
    : config_(std::move(config)), state_(std::move(state)), modes_(config_.mode_spec()) {
  config_.validate();
  gan::validate(state_.ensemble);
  if (state_.ensemble.size() != config_.num_discriminators()) {
    throw ConfigError("training state does not match the configured ensemble");
  }
  eval_set_ = make_eval_set(config_);
  prepare_outputs(resumed);
}

Trainer Trainer::resume(const fs::path& checkpoint_path) {
  auto ck = load_checkpoint(checkpoint_path);
  RunConfig config = parse_config_text(ck.config_text);
  // Logs are continued next to the checkpoint, wherever the run directory now lives.
  config.output_dir = fs::absolute(checkpoint_path).parent_path().string();
  return Trainer(std::move(config), std::move(ck.state), true);
}

void Trainer::prepare_outputs(bool resumed) {
  const fs::path dir = config_.output_dir;
  io::ensure_directory(dir);
  artifacts_.output_dir = dir;
  artifacts_.policy_log = dir / "policy.csv";
  artifacts_.policy_average_log = dir / "policy_avg.csv";
  artifacts_.metrics_log = dir / "metrics.csv";
  artifacts_.summary = dir / "summary.json";
  if (resumed) {
    policy_log_ = io::CsvLog::resume(artifacts_.policy_log, state_.policy_log_offset);
    metrics_log_ = io::CsvLog::resume(artifacts_.metrics_log, state_.metrics_log_offset);
  } else {
    io::write_file(dir / "config.txt", serialize_config(config_));
    policy_log_ = io::CsvLog::create(artifacts_.policy_log, csv_header(config_.num_discriminators()));
    metrics_log_ = io::CsvLog::create(artifacts_.metrics_log, "iter,fd,modes_covered,hq_fraction");
    state_.policy_log_offset = policy_log_.offset();
    state_.metrics_log_offset = metrics_log_.offset();
  }
}

void Trainer::step() {
  const std::uint64_t t = state_.t + 1;
  try {
    do_step(t);
  } catch (const NumericError& e) {
    abort_run(t, e.what());
  }
}

void Trainer::do_step(std::uint64_t t) {
  const auto bandit = config_.bandit.effective();
  const std::size_t n = config_.num_discriminators();
  const std::size_t batch = config_.batch_size;
  auto& s = state_;

  const std::vector<double> pi = s.bandit.pi;
  std::vector<double> weights = pi;
  if (config_.allocation == Allocation::kSample) {
    const double u = s.streams.allocation.uniform();
    std::size_t pick = n - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += pi[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    std::fill(weights.begin(), weights.end(), 0.0);
    weights[pick] = 1.0;
  }

  const auto train_modes = mode_subset(config_.train_modes);
  const Matrix real = data::sample_mixture(modes_, batch, s.streams.data, train_modes);
  const Matrix z_d = data::sample_prior({config_.prior_dim}, batch, s.streams.prior);
  gan::discriminator_update(s.ensemble, weights, real, z_d, s.generator,
                            config_.noise ? &*config_.noise : nullptr, t, &s.streams.noise);

  const bool reward_active = t >= bandit.warmup;
  gan::ParamSnapshot previous;
  if (reward_active) previous = gan::snapshot(s.generator, t - 1);

  const Matrix z_g = data::sample_prior({config_.prior_dim}, batch, s.streams.prior);
  gan::generator_update(s.generator, s.ensemble, weights, z_g);

  std::vector<double> rewards(n, 0.0);
  if (reward_active) {
    const Matrix z_r = data::sample_prior({config_.prior_dim}, config_.reward_batch, s.streams.reward);
    Matrix real_r;
    if (bandit.reward_kind == curriculum::RewardKind::kRawLoss) {
      real_r = data::sample_mixture(modes_, config_.reward_batch, s.streams.reward, train_modes);
    }
    rewards = curriculum::evaluate_rewards(s.ensemble, s.generator.net, previous, z_r, real_r,
                                           bandit.reward_kind);
    s.bandit = curriculum::q_update(s.bandit, {rewards, t, bandit.reward_kind}, bandit.alpha);
  }
  s.bandit.pi = curriculum::policy_weights(s.bandit.q, bandit.lambda, t + 1, bandit.warmup);

  std::vector<double> row;
  row.reserve(3 * n);
  row.insert(row.end(), rewards.begin(), rewards.end());
  row.insert(row.end(), s.bandit.q.begin(), s.bandit.q.end());
  row.insert(row.end(), pi.begin(), pi.end());
  policy_log_.write_row(row, t);
  s.policy_log_offset = policy_log_.offset();
  s.pi_history.insert(s.pi_history.end(), pi.begin(), pi.end());
  s.t = t;

  if (t % config_.eval_interval == 0) record_eval(t);
  if (config_.gradfield_interval != 0 && t % config_.gradfield_interval == 0) dump_gradfields(t);
}

EvalSet make_eval_set(const RunConfig& config) {
  // Depends only on the seed, so a resumed run rebuilds the same set.
  RngStream rng(config.seed, "eval");
  EvalSet set;
  set.real = data::sample_mixture(config.mode_spec(), config.eval_samples, rng);
  set.z = data::sample_prior({config.prior_dim}, config.eval_samples, rng);
  set.real_moments = metrics::moments(set.real);
  return set;
}

EvalReport evaluate_generator(const nn::MlpNetwork& gen, const EvalSet& set, const RunConfig& config) {
  EvalReport report;
  report.samples = nn::predict(gen, set.z);
  check_finite(report.samples, "generated evaluation samples");
  report.coverage =
      metrics::coverage(report.samples, config.mode_spec(), config.hq_multiplier, config.min_count);
  report.fd = metrics::frechet_distance(set.real_moments, metrics::moments(report.samples));
  return report;
}

EvalReport Trainer::evaluate() const { return evaluate_generator(state_.generator.net, eval_set_, config_); }

void Trainer::record_eval(std::uint64_t t) {
  const auto report = evaluate();
  MetricsRow row{t, report.fd, report.coverage.modes_covered, report.coverage.hq_fraction};
  state_.metrics.push_back(row);
  const double values[] = {row.fd, static_cast<double>(row.modes_covered), row.hq_fraction};
  metrics_log_.write_row(values, t);
  metrics_log_.flush();
  state_.metrics_log_offset = metrics_log_.offset();
  if (config_.sample_dump) {
    const fs::path path = artifacts_.output_dir / ("samples_" + std::to_string(t) + ".csv");
    io::write_points_csv(path, report.samples);
    artifacts_.sample_dumps.push_back(path);
  }
}

metrics::GridSpec Trainer::gradfield_grid() const {
  const double e = config_.gradfield_extent;
  return {-e, e, -e, e, config_.gradfield_resolution};
}

std::vector<Matrix> Trainer::gradient_fields() const {
  std::vector<Matrix> fields;
  const auto grid = gradfield_grid();
  for (const auto& d : state_.ensemble.discriminators) {
    fields.push_back(metrics::gradient_norm_field(d, grid));
  }
  return fields;
}

void Trainer::dump_gradfields(std::uint64_t t) {
  const auto fields = gradient_fields();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const fs::path path = artifacts_.output_dir /
                          ("gradfield_d" + std::to_string(i + 1) + "_" + std::to_string(t) + ".csv");
    io::write_field_csv(path, fields[i], gradfield_grid(), i + 1, t);
    artifacts_.gradfield_dumps.push_back(path);
  }
}

Checkpoint Trainer::checkpoint() const { return {serialize_config(config_), state_}; }

fs::path Trainer::save_checkpoint(const std::string& name) {
  policy_log_.flush();
  metrics_log_.flush();
  const fs::path path = artifacts_.output_dir / name;
  acgan::save_checkpoint(path, checkpoint());
  artifacts_.checkpoints.push_back(path);
  return path;
}

void Trainer::abort_run(std::uint64_t t, const std::string& message) {
  json record = {{"status", "numeric_abort"}, {"iteration", t}, {"message", message}};
  try {
    io::write_file(artifacts_.output_dir / "abort.json", record.dump(2) + "\n");
    save_checkpoint("checkpoint_crash.bin");
  } catch (const Error&) {
    // The numeric failure is the error worth reporting.
  }
  throw NumericError("iteration " + std::to_string(t) + ": " + message);
}

void Trainer::run(std::optional<std::uint64_t> until) {
  const std::uint64_t target = until.value_or(config_.iterations);
  while (state_.t < target) {
    step();
    if (config_.checkpoint_interval != 0 && state_.t % config_.checkpoint_interval == 0) {
      save_checkpoint("checkpoint_" + std::to_string(state_.t) + ".bin");
    }
  }
}

void Trainer::write_policy_average() const {
  const std::size_t n = config_.num_discriminators();
  const std::size_t rows = state_.pi_history.size() / n;
  std::string text = "iter";
  for (std::size_t i = 1; i <= n; ++i) text += ",pibar_" + std::to_string(i);
  text += '\n';
  for (std::size_t start = 0; start < rows; start += kPolicyAverageWindow) {
    const std::size_t end = std::min(rows, start + kPolicyAverageWindow);
    text += std::to_string(end);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t r = start; r < end; ++r) s += state_.pi_history[r * n + i];
      text += ',' + format_double(s / static_cast<double>(end - start));
    }
    text += '\n';
  }
  io::write_file(artifacts_.policy_average_log, text);
}

RunArtifacts Trainer::finish() {
  const std::uint64_t t = state_.t;
  const bool logged = !state_.metrics.empty() && state_.metrics.back().iteration == t;
  const EvalReport final_report = evaluate();
  if (!logged && config_.sample_dump) {
    const fs::path path = artifacts_.output_dir / ("samples_" + std::to_string(t) + ".csv");
    io::write_points_csv(path, final_report.samples);
    artifacts_.sample_dumps.push_back(path);
  }
  const bool fields_dumped = config_.gradfield_interval != 0 && t % config_.gradfield_interval == 0;
  if (!fields_dumped) dump_gradfields(t);
  std::vector<double> field_means;
  for (const auto& f : gradient_fields()) field_means.push_back(metrics::mean_value(f));

  const auto hist_grid = histogram_grid(config_);
  io::write_histogram_csv(artifacts_.output_dir / ("histogram_" + std::to_string(t) + ".csv"),
                          metrics::density_histogram(final_report.samples, hist_grid), hist_grid);
  write_policy_average();
  artifacts_.final_checkpoint = save_checkpoint("checkpoint_final.bin");

  json summary;
  json cfg = json::object();
  for (const auto& [k, v] : to_key_values(config_)) cfg[k] = v;
  summary["config"] = cfg;
  summary["status"] = "completed";
  summary["iterations"] = t;
  if (!state_.metrics.empty()) {
    const auto best = std::min_element(state_.metrics.begin(), state_.metrics.end(),
                                       [](const MetricsRow& a, const MetricsRow& b) { return a.fd < b.fd; });
    summary["best_fd"] = best->fd;
    summary["best_fd_iteration"] = best->iteration;
    summary["first_eval_fd"] = state_.metrics.front().fd;
    summary["first_eval_iteration"] = state_.metrics.front().iteration;
  } else {
    summary["best_fd"] = final_report.fd;
    summary["best_fd_iteration"] = t;
  }
  summary["final"] = {{"iteration", t},
                      {"fd", final_report.fd},
                      {"modes_covered", final_report.coverage.modes_covered},
                      {"hq_fraction", final_report.coverage.hq_fraction},
                      {"per_mode_counts", final_report.coverage.per_mode_counts}};
  summary["gradfield_mean"] = field_means;
  const auto diag = curriculum_diagnostic(state_.pi_history, config_.num_discriminators(),
                                          config_.bandit.effective().warmup);
  summary["curriculum"] = {{"argmax_changes_after_warmup", diag.argmax_changes_after_warmup},
                           {"argmax_changed", diag.argmax_changed()},
                           {"final_max_deviation", diag.final_max_deviation},
                           {"converged_to_uniform", diag.converged_to_uniform()}};
  summary["generator_hash"] = io::params_hash(state_.generator.net.params);
  json files = json::object();
  files["policy"] = artifacts_.policy_log.filename().string();
  files["policy_average"] = artifacts_.policy_average_log.filename().string();
  files["metrics"] = artifacts_.metrics_log.filename().string();
  files["final_checkpoint"] = artifacts_.final_checkpoint.filename().string();
  summary["files"] = files;
  io::write_file(artifacts_.summary, summary.dump(2) + "\n");
  policy_log_.flush();
  metrics_log_.flush();
  return artifacts_;
}

RunArtifacts run_training(const RunConfig& config, const std::optional<fs::path>& resume_from) {
  if (resume_from) {
    Trainer trainer = Trainer::resume(*resume_from);
    trainer.run();
    return trainer.finish();
  }
  Trainer trainer(config);
  trainer.run();
  return trainer.finish();
}

std::vector<RunArtifacts> run_sweep(const RunConfig& config, std::span<const std::uint64_t> seeds,
                                    std::size_t jobs) {
  std::vector<RunConfig> configs;
  for (std::uint64_t seed : seeds) {
    RunConfig c = config;
    c.seed = seed;
    c.output_dir = (fs::path(config.output_dir) / ("seed_" + std::to_string(seed))).string();
    configs.push_back(std::move(c));
  }
  std::vector<RunArtifacts> results(configs.size());
  jobs = std::max<std::size_t>(1, jobs);
  for (std::size_t start = 0; start < configs.size(); start += jobs) {
    std::vector<std::future<RunArtifacts>> running;
    const std::size_t end = std::min(configs.size(), start + jobs);
    for (std::size_t i = start; i < end; ++i) {
      running.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                   [&configs, i] { return run_training(configs[i]); }));
    }
    for (std::size_t i = start; i < end; ++i) results[i] = running[i - start].get();
  }
  return results;
}

}  // namespace acgan
