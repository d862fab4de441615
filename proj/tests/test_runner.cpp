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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "acgan/error.hpp"
#include "acgan/io.hpp"
#include "acgan/trainer.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using acgan::KeyValues;
using acgan::RunConfig;
using acgan::Trainer;
using acgan::test::scratch_dir;
using acgan::test::tiny_config;
using nlohmann::json;

namespace {

std::vector<std::vector<double>> read_rows(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

// pi columns of a policy row with N discriminators.
std::vector<double> pi_of(const std::vector<double>& row, std::size_t n) {
  return {row.end() - static_cast<std::ptrdiff_t>(n), row.end()};
}

acgan::RunArtifacts train(const RunConfig& config) { return acgan::run_training(config); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ACGAN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("vanilla logs a constant weight of one") {
  const auto dir = scratch_dir("vanilla");
  const auto art = train(tiny_config(dir, {{"variant", "vanilla"}, {"discriminators", "8,8"}}));
  const auto rows = read_rows(art.policy_log);
  REQUIRE(rows.size() == 60);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 4);
    CHECK(row[3] == 1.0);
  }
}

TEST_CASE("uniform logs constant thirds") {
  const auto dir = scratch_dir("uniform");
  const auto art = train(tiny_config(dir, {{"variant", "uniform"}}));
  for (const auto& row : read_rows(art.policy_log)) {
    for (double p : pi_of(row, 3)) CHECK(p == 1.0 / 3.0);
  }
}

TEST_CASE("weights stay uniform through warm-up") {
  const auto dir = scratch_dir("warmup");
  const auto art = train(tiny_config(dir));
  const auto rows = read_rows(art.policy_log);
  for (std::size_t t = 1; t <= 10; ++t) {
    REQUIRE(rows[t - 1][0] == static_cast<double>(t));
    for (double p : pi_of(rows[t - 1], 3)) CHECK(p == 1.0 / 3.0);
    // Rewards and Q start at t = warmup; the weights they produce apply from t + 1.
    for (std::size_t i = 1; i <= 6; ++i) CHECK((rows[t - 1][i] == 0.0) == (t < 10));
  }
  const auto first = pi_of(rows[10], 3);
  CHECK_FALSE((first[0] == first[1] && first[1] == first[2]));
  double s = 0.0;
  for (double p : first) s += p;
  CHECK(std::abs(s - 1.0) < 1e-12);
}

TEST_CASE("identical configs give byte-identical logs") {
  const auto a = train(tiny_config(scratch_dir("det-a"), {{"seed", "5"}}));
  const auto b = train(tiny_config(scratch_dir("det-b"), {{"seed", "5"}}));
  const auto c = train(tiny_config(scratch_dir("det-c"), {{"seed", "6"}}));
  CHECK(acgan::io::read_file(a.policy_log) == acgan::io::read_file(b.policy_log));
  CHECK(acgan::io::read_file(a.metrics_log) == acgan::io::read_file(b.metrics_log));
  CHECK(acgan::io::read_file(a.policy_log) != acgan::io::read_file(c.policy_log));
}

TEST_CASE("log completeness") {
  const auto art = train(tiny_config(scratch_dir("complete"), {{"iterations", "50"}}));
  CHECK(read_rows(art.policy_log).size() == 50);
  const auto metrics = read_rows(art.metrics_log);
  REQUIRE(metrics.size() == 2);
  CHECK(metrics[0][0] == 20);
  CHECK(metrics[1][0] == 40);
  const auto text = acgan::io::read_file(art.policy_log);
  CHECK(text.substr(0, text.find('\n')) == "iter,r_1,r_2,r_3,q_1,q_2,q_3,pi_1,pi_2,pi_3");
}

TEST_CASE("variant presets match their explicit settings") {
  const auto uniform = train(tiny_config(scratch_dir("v-uniform"), {{"variant", "uniform"}}));
  const auto lambda0 = train(tiny_config(scratch_dir("v-lambda0"), {{"lambda", "0"}}));
  CHECK(acgan::io::read_file(uniform.policy_log) == acgan::io::read_file(lambda0.policy_log));

  const auto gman = train(tiny_config(scratch_dir("v-gman"), {{"variant", "gman"}}));
  const auto raw = train(tiny_config(scratch_dir("v-raw"), {{"alpha", "1"}, {"reward", "raw_loss"}}));
  CHECK(acgan::io::read_file(gman.policy_log) == acgan::io::read_file(raw.policy_log));
}

TEST_CASE("resume reproduces the uninterrupted run") {
  const auto full = train(tiny_config(scratch_dir("resume-full")));

  const auto dir = scratch_dir("resume-split");
  {
    Trainer first(tiny_config(dir));
    first.run(20);
    first.save_checkpoint("mid.bin");
    first.run(33);  // rows past the checkpoint must be discarded on resume
  }
  auto second = Trainer::resume(dir / "mid.bin");
  CHECK(second.state().t == 20);
  second.run();
  const auto art = second.finish();
  CHECK(acgan::io::read_file(art.policy_log) == acgan::io::read_file(full.policy_log));
  CHECK(acgan::io::read_file(art.metrics_log) == acgan::io::read_file(full.metrics_log));
  CHECK(acgan::load_checkpoint(art.final_checkpoint).state ==
        acgan::load_checkpoint(full.final_checkpoint).state);
}

TEST_CASE("non-finite values abort with a crash record") {
  const auto dir = scratch_dir("abort");
  Trainer trainer(tiny_config(dir, {{"lr", "1e300"}}));
  std::string message;
  try {
    trainer.run();
  } catch (const acgan::NumericError& e) {
    message = e.what();
  }
  REQUIRE_FALSE(message.empty());
  CHECK(message.find("iteration") != std::string::npos);
  CHECK(fs::exists(dir / "abort.json"));
  CHECK(fs::exists(dir / "checkpoint_crash.bin"));
  const auto record = json::parse(acgan::io::read_file(dir / "abort.json"));
  CHECK(record.contains("iteration"));
  const auto where = record["message"].get<std::string>();
  CHECK((where.find("discriminator") != std::string::npos || where.find("generator") != std::string::npos));
}

TEST_CASE("artifacts and summary") {
  const auto dir = scratch_dir("artifacts");
  const auto art = train(tiny_config(dir, {{"checkpoint_interval", "30"}, {"gradfield_interval", "40"}}));
  CHECK(art.sample_dumps.size() == 3);
  CHECK(art.checkpoints.size() == 3);  // 30, 60 and the final one
  CHECK(fs::exists(dir / "checkpoint_30.bin"));
  for (const auto& p : art.sample_dumps) CHECK(fs::exists(p));
  for (const auto& p : art.checkpoints) CHECK(fs::exists(p));
  // Three discriminators at iterations 40 and 60, each with a sidecar.
  CHECK(art.gradfield_dumps.size() == 6);
  for (const auto& p : art.gradfield_dumps) {
    CHECK(fs::exists(p));
    CHECK(fs::exists(fs::path(p.string() + ".json")));
  }
  CHECK(fs::exists(dir / "gradfield_d1_60.csv"));
  CHECK(fs::exists(dir / "samples_60.csv"));
  CHECK(fs::exists(art.policy_average_log));

  const auto summary = json::parse(acgan::io::read_file(art.summary));
  CHECK(summary["status"] == "completed");
  CHECK(summary["iterations"] == 60);
  CHECK(summary["config"]["dataset"] == "grid25");
  CHECK(summary["final"]["iteration"] == 60);
  CHECK(summary["final"]["per_mode_counts"].size() == 25);
  CHECK(summary["best_fd"].get<double>() <= summary["first_eval_fd"].get<double>());
  CHECK(summary.contains("curriculum"));
  for (const auto& f : summary["files"]) CHECK(fs::exists(dir / f.get<std::string>()));

  const auto samples = read_rows(dir / "samples_20.csv");
  CHECK(samples.size() == 400);
  CHECK(samples[0].size() == 2);
}

TEST_CASE("sampled allocation and input noise run deterministically") {
  const KeyValues sample{{"allocation", "sample"}};
  const auto a = train(tiny_config(scratch_dir("alloc-a"), sample));
  const auto b = train(tiny_config(scratch_dir("alloc-b"), sample));
  CHECK(acgan::io::read_file(a.policy_log) == acgan::io::read_file(b.policy_log));

  const KeyValues noisy{{"noise_sigmas", "0.1,0.1,0.1"}, {"noise_decay", "0.99"}};
  const auto n1 = train(tiny_config(scratch_dir("noise-a"), noisy));
  const auto n2 = train(tiny_config(scratch_dir("noise-b"), noisy));
  const auto clean = train(tiny_config(scratch_dir("noise-c")));
  CHECK(acgan::io::read_file(n1.policy_log) == acgan::io::read_file(n2.policy_log));
  CHECK(acgan::io::read_file(n1.policy_log) != acgan::io::read_file(clean.policy_log));
}

TEST_CASE("sweep runs one directory per seed") {
  const auto dir = scratch_dir("sweep");
  const std::vector<std::uint64_t> seeds{1, 2};
  const auto arts = acgan::run_sweep(tiny_config(dir, {{"iterations", "20"}}), seeds, 2);
  REQUIRE(arts.size() == 2);
  CHECK(fs::exists(dir / "seed_1" / "summary.json"));
  CHECK(fs::exists(dir / "seed_2" / "summary.json"));
  const auto solo = train(tiny_config(scratch_dir("sweep-solo"), {{"iterations", "20"}, {"seed", "2"}}));
  CHECK(acgan::io::read_file(arts[1].policy_log) == acgan::io::read_file(solo.policy_log));
}

TEST_CASE("mode recovery shares one pretrained generator") {
  const auto dir = scratch_dir("recovery");
  auto config = acgan::resolve_config({{"dataset", "ring8"},
                                       {"generator", "16,16"},
                                       {"discriminators", "8;8,8;8,8,8"},
                                       {"batch_size", "24"},
                                       {"iterations", "20"},
                                       {"pretrain_iterations", "20"},
                                       {"eval_interval", "10"},
                                       {"eval_samples", "400"},
                                       {"reward_batch", "64"},
                                       {"gradfield_resolution", "8"},
                                       {"output_dir", dir.string()}});
  const auto result = acgan::run_mode_recovery(config);
  const auto summary = json::parse(acgan::io::read_file(result.summary));
  CHECK(summary["shared_initialization"] == true);
  CHECK(result.acgan_gradfield_means.size() == 3);
  CHECK(result.vanilla_gradfield_means.size() == 1);
  CHECK(fs::exists(dir / "pretrain" / "policy.csv"));
  CHECK(fs::exists(dir / "vanilla" / "gradfield_d1_20.csv"));
  CHECK(fs::exists(dir / "acgan" / "gradfield_d3_20.csv"));

  config.dataset = acgan::Dataset::kGrid25;
  CHECK_THROWS_AS(acgan::run_mode_recovery(config), acgan::ConfigError);
}

TEST_CASE("curriculum diagnostic") {
  std::vector<double> pi;
  auto push = [&](std::size_t rows, double p0) {
    for (std::size_t r = 0; r < rows; ++r) {
      pi.push_back(p0);
      pi.push_back(1 - p0);
    }
  };
  push(400, 0.9);
  push(400, 0.1);
  push(200, 0.55);
  const auto all = acgan::curriculum_diagnostic(pi, 2, 0);
  CHECK(all.argmax_changes_after_warmup == 2);
  CHECK(all.argmax_changed());
  CHECK(all.final_max_deviation == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(all.converged_to_uniform());

  CHECK(acgan::curriculum_diagnostic(pi, 2, 250).argmax_changes_after_warmup == 1);

  std::vector<double> stuck;
  for (int r = 0; r < 1000; ++r) {
    stuck.push_back(0.95);
    stuck.push_back(0.05);
  }
  const auto flat = acgan::curriculum_diagnostic(stuck, 2, 0);
  CHECK_FALSE(flat.argmax_changed());
  CHECK_FALSE(flat.converged_to_uniform());
}

TEST_CASE("command-line exit codes") {
  const auto dir = scratch_dir("cli");
  acgan::io::write_file(dir / "run.cfg", acgan::serialize_config(tiny_config(dir / "run", {{"iterations", "10"}})));
  const std::string cfg = (dir / "run.cfg").string();

  CHECK(run_cli("train " + cfg) == 0);
  CHECK(fs::exists(dir / "run" / "summary.json"));
  CHECK(run_cli("eval " + (dir / "run" / "checkpoint_final.bin").string()) == 0);
  CHECK(run_cli("gradmap " + (dir / "run" / "checkpoint_final.bin").string() + " --out " +
                (dir / "map").string() + " --resolution 5") == 0);
  CHECK(fs::exists(dir / "map" / "gradfield_d3_10.csv"));

  CHECK(run_cli("train " + cfg + " --batch_size 65") == 2);
  CHECK(run_cli("train " + cfg + " --no_such_key 1") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("train " + cfg + " --lr 1e300 --output_dir " + (dir / "boom").string()) == 3);
  CHECK(run_cli("eval " + (dir / "missing.bin").string()) == 4);
  CHECK(run_cli("train " + (dir / "missing.cfg").string()) == 4);
}

}  // TEST_SUITE
