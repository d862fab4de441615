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

// Command-line front end: train, recover-modes, gradmap, eval, sweep.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "acgan/checkpoint.hpp"
#include "acgan/error.hpp"
#include "acgan/io.hpp"
#include "acgan/kernels.hpp"
#include "acgan/trainer.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using acgan::KeyValues;
using nlohmann::json;

// Turns trailing `--key value` / `--key=value` pairs into config overrides.
// Dashes inside keys are accepted for underscores.
KeyValues parse_overrides(const std::vector<std::string>& extras) {
  KeyValues kv;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() == 2) {
      throw acgan::ConfigError("unexpected argument '" + arg + "'; overrides take the form --key value");
    }
    std::string key = arg.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.resize(eq);
    } else {
      if (i + 1 >= extras.size()) throw acgan::ConfigError("override --" + key + " is missing a value");
      value = extras[++i];
    }
    std::replace(key.begin(), key.end(), '-', '_');
    kv[key] = value;
  }
  return kv;
}

acgan::RunConfig load_config(const std::string& path, const KeyValues& overrides) {
  if (path.empty()) return acgan::parse_config_text("", overrides);
  return acgan::parse_config(path, overrides);
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto dash = item.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("range");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      } else {
        std::size_t used = 0;
        seeds.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument("seed");
      }
    } catch (const std::logic_error&) {
      throw acgan::ConfigError("--seeds: cannot parse '" + item + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (seeds.empty()) throw acgan::ConfigError("--seeds: no seeds given");
  return seeds;
}

void print_summary(const fs::path& summary) { std::cout << acgan::io::read_file(summary); }

int cmd_train(const std::string& config_path, const std::vector<std::string>& extras,
              const std::string& resume) {
  if (!resume.empty()) {
    if (!extras.empty()) throw acgan::ConfigError("--resume does not accept config overrides");
    const auto artifacts = acgan::run_training({}, fs::path(resume));
    print_summary(artifacts.summary);
    return 0;
  }
  const auto config = load_config(config_path, parse_overrides(extras));
  const auto artifacts = acgan::run_training(config);
  print_summary(artifacts.summary);
  return 0;
}

int cmd_recover(const std::string& config_path, const std::vector<std::string>& extras) {
  KeyValues overrides = parse_overrides(extras);
  if (!overrides.count("dataset") && config_path.empty()) overrides["dataset"] = "ring8";
  const auto result = acgan::run_mode_recovery(load_config(config_path, overrides));
  print_summary(result.summary);
  return 0;
}

int cmd_gradmap(const std::string& checkpoint_path, const std::string& out_dir, std::size_t resolution,
                double extent) {
  const auto ck = acgan::load_checkpoint(checkpoint_path);
  acgan::metrics::GridSpec grid{-extent, extent, -extent, extent, resolution};
  grid.validate();
  const fs::path dir = out_dir.empty() ? fs::path(checkpoint_path).parent_path() : fs::path(out_dir);
  acgan::io::ensure_directory(dir);
  json listing = json::array();
  const auto& ds = ck.state.ensemble.discriminators;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto field = acgan::metrics::gradient_norm_field(ds[i], grid);
    const fs::path path =
        dir / ("gradfield_d" + std::to_string(i + 1) + "_" + std::to_string(ck.state.t) + ".csv");
    acgan::io::write_field_csv(path, field, grid, i + 1, ck.state.t);
    listing.push_back({{"file", path.string()}, {"mean", acgan::metrics::mean_value(field)}});
  }
  std::cout << listing.dump(2) << '\n';
  return 0;
}

int cmd_eval(const std::string& checkpoint_path, const std::string& samples_out) {
  const auto ck = acgan::load_checkpoint(checkpoint_path);
  const auto config = acgan::parse_config_text(ck.config_text);
  const auto report =
      acgan::evaluate_generator(ck.state.generator.net, acgan::make_eval_set(config), config);
  if (!samples_out.empty()) acgan::io::write_points_csv(samples_out, report.samples);
  const json out = {{"iteration", ck.state.t},
                    {"dataset", acgan::to_string(config.dataset)},
                    {"fd", report.fd},
                    {"modes_covered", report.coverage.modes_covered},
                    {"num_modes", report.coverage.per_mode_counts.size()},
                    {"hq_fraction", report.coverage.hq_fraction},
                    {"per_mode_counts", report.coverage.per_mode_counts}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& extras,
              const std::string& seeds_text, std::size_t jobs) {
  const auto config = load_config(config_path, parse_overrides(extras));
  const auto seeds = parse_seeds(seeds_text);
  const auto runs = acgan::run_sweep(config, seeds, jobs);
  json table = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    auto summary = json::parse(acgan::io::read_file(runs[i].summary));
    table.push_back({{"seed", seeds[i]},
                     {"output_dir", runs[i].output_dir.string()},
                     {"best_fd", summary["best_fd"]},
                     {"modes_covered", summary["final"]["modes_covered"]},
                     {"hq_fraction", summary["final"]["hq_fraction"]}});
  }
  const std::string text = table.dump(2) + "\n";
  acgan::io::write_file(fs::path(config.output_dir) / "sweep.json", text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  acgan::kernels::retain_heap_memory();
  CLI::App app{"Adaptive curriculum GAN on 2-D Gaussian mixtures"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads for the dense kernels (0: runtime default)")
      ->check(CLI::NonNegativeNumber);

  std::string config_path;
  std::string resume;
  auto* train = app.add_subcommand("train", "Train one run; trailing --key value pairs override the config");
  auto* resume_opt = train->add_option("--resume", resume, "Continue from a checkpoint file");
  train->add_option("config", config_path, "Config file (key = value lines)")->excludes(resume_opt);
  train->allow_extras();

  auto* recover = app.add_subcommand("recover-modes", "Pretrain on two ring modes, then compare recovery");
  recover->add_option("config", config_path, "Config file");
  recover->allow_extras();

  std::string checkpoint_path;
  std::string out_dir;
  std::size_t resolution = 200;
  double extent = 2.0;
  auto* gradmap = app.add_subcommand("gradmap", "Input-gradient norm fields of every discriminator");
  gradmap->add_option("checkpoint", checkpoint_path, "Checkpoint file")->required();
  gradmap->add_option("--out", out_dir, "Output directory (default: next to the checkpoint)");
  gradmap->add_option("--resolution", resolution, "Lattice points per axis")->check(CLI::PositiveNumber);
  gradmap->add_option("--extent", extent, "Half-width of the square [-e, e]^2")->check(CLI::PositiveNumber);

  std::string samples_out;
  auto* eval = app.add_subcommand("eval", "Coverage, HQ fraction and FD of a checkpointed generator");
  eval->add_option("checkpoint", checkpoint_path, "Checkpoint file")->required();
  eval->add_option("--samples", samples_out, "Also write the evaluation samples as x,y CSV");

  std::string seeds = "0-4";
  std::size_t jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "One run per seed under output_dir/seed_<s>");
  sweep->add_option("config", config_path, "Config file");
  sweep->add_option("--seeds", seeds, "Comma list or range, e.g. 0-4 or 1,3,7");
  sweep->add_option("--jobs", jobs, "Runs executed concurrently")->check(CLI::PositiveNumber);
  sweep->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(acgan::ExitCode::kConfig);
  }

  try {
    if (threads > 0) acgan::kernels::set_threads(threads);
    if (*train && config_path.empty() && resume.empty()) {
      throw acgan::ConfigError("train needs a config file or --resume");
    }
    if (*train) return cmd_train(config_path, train->remaining(), resume);
    if (*recover) return cmd_recover(config_path, recover->remaining());
    if (*gradmap) return cmd_gradmap(checkpoint_path, out_dir, resolution, extent);
    if (*eval) return cmd_eval(checkpoint_path, samples_out);
    if (*sweep) return cmd_sweep(config_path, sweep->remaining(), seeds, jobs);
  } catch (const acgan::Error& e) {
    std::cerr << "acgan: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "acgan: " << e.what() << '\n';
    return static_cast<int>(acgan::ExitCode::kIo);
  }
  return 0;
}
