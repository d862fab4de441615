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

#include "acgan/config.hpp"

#include <fstream>

#include "acgan/error.hpp"
#include "doctest.h"
#include "support.hpp"

using acgan::Dataset;
using acgan::KeyValues;
using acgan::RunConfig;
namespace cur = acgan::curriculum;

namespace {

std::string error_of(const KeyValues& kv) {
  try {
    acgan::resolve_config(kv);
  } catch (const acgan::ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("grid25 defaults") {
  const RunConfig c = acgan::parse_config_text("");
  CHECK(c.dataset == Dataset::kGrid25);
  CHECK(c.variant == cur::Variant::kAcgan);
  CHECK(c.num_discriminators() == 3);
  CHECK(c.bandit.alpha == 0.01);
  CHECK(c.bandit.lambda == 15.0);
  CHECK(c.bandit.warmup == 45);
  CHECK(c.optimizer.kind == acgan::optim::Kind::kAdam);
  CHECK(c.optimizer.beta1 == 0.5);
  CHECK(c.optimizer.beta2 == 0.999);
  CHECK(c.optimizer.lr == 0.0002);
  CHECK(c.iterations == 7500);
  CHECK(c.iterations == 15 * c.epoch_iterations);
  CHECK(c.eval_samples == 10000);
  CHECK(c.mode_spec().size() == 25);
  // Weakest first.
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(c.discriminator_hidden[i].size() > c.discriminator_hidden[i - 1].size());
  }
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("ring8 defaults") {
  const RunConfig c = acgan::parse_config_text("dataset = ring8\n");
  CHECK(c.optimizer.lr == 0.0001);
  CHECK(c.mode_spec().size() == 8);
  CHECK(c.generator_hidden == std::vector<std::size_t>(3, 400));
  CHECK(c.discriminator_hidden.front().size() == 1);
  CHECK(c.discriminator_hidden.back().size() == 3);

  const RunConfig v = acgan::parse_config_text("dataset = ring8\nvariant = vanilla\n");
  CHECK(v.num_discriminators() == 1);
  CHECK(v.bandit.warmup == 15);
  CHECK(v.discriminator_hidden.front() == std::vector<std::size_t>(3, 400));
}

TEST_CASE("warm-up follows N unless given") {
  CHECK(acgan::parse_config_text("discriminators = 8;8,8\n").bandit.warmup == 30);
  CHECK(acgan::parse_config_text("discriminators = 8;8,8\nwarmup = 3\n").bandit.warmup == 3);
}

TEST_CASE("invalid configs name the key") {
  const auto batch = error_of({{"discriminators", "8;8,8"}, {"batch_size", "65"}});
  CHECK(batch.find("batch_size") != std::string::npos);
  CHECK(error_of({{"learning_rate", "1"}}).find("learning_rate") != std::string::npos);
  CHECK(error_of({{"variant", "vanilla"}, {"discriminators", "8;8"}}).find("discriminators") !=
        std::string::npos);
  CHECK(error_of({{"lr", "abc"}}).find("lr") != std::string::npos);
  CHECK(error_of({{"alpha", "0"}}).find("alpha") != std::string::npos);
  CHECK(error_of({{"dataset", "mnist"}}).find("dataset") != std::string::npos);
  CHECK(error_of({{"noise_sigmas", "0.1"}}).find("noise_sigmas") != std::string::npos);
  CHECK(error_of({{"epochs", "2"}, {"iterations", "10"}}).find("epochs") != std::string::npos);
  CHECK_THROWS_AS(acgan::parse_key_values("no equals sign\n"), acgan::ConfigError);
}

TEST_CASE("key-value text") {
  const auto kv = acgan::parse_key_values("# comment\n lr = 0.5  # trailing\n\nseed=3\n");
  CHECK(kv == KeyValues{{"lr", "0.5"}, {"seed", "3"}});
  const RunConfig c = acgan::parse_config_text("seed = 3\n", {{"seed", "9"}});
  CHECK(c.seed == 9);
}

TEST_CASE("epochs set the horizon") {
  const RunConfig c = acgan::parse_config_text("epochs = 3\nepoch_iterations = 100\n");
  CHECK(c.iterations == 300);
}

TEST_CASE("serialize then parse is the identity") {
  const std::vector<std::string> texts = {
      "",
      "dataset = ring8\nvariant = vanilla\n",
      "variant = gman\nallocation = sample\nnoise_sigmas = 0.1,0.2,0.3\nnoise_decay = 0.997\n",
      "optimizer = rmsprop\nlr = 3.3e-5\nreward = value\ntrain_modes = 1,4\nseed = 12345678901\n",
      "discriminators = 4;5,6\ndiscriminator_activations = tanh,leaky_relu\nleaky_slope = 0.3\n"};
  for (const auto& text : texts) {
    const RunConfig a = acgan::parse_config_text(text);
    const std::string once = acgan::serialize_config(a);
    const RunConfig b = acgan::parse_config_text(once);
    CHECK(a == b);
    CHECK(acgan::serialize_config(b) == once);
  }
  for (double v : {0.1, 1e-300, 2.0 / 3.0, 12345.678}) CHECK(std::stod(acgan::format_double(v)) == v);
}

TEST_CASE("config files") {
  const auto dir = acgan::test::scratch_dir("config");
  std::ofstream(dir / "a.cfg") << "dataset = ring8\niterations = 40\n";
  const RunConfig c = acgan::parse_config(dir / "a.cfg", {{"seed", "4"}});
  CHECK(c.iterations == 40);
  CHECK(c.seed == 4);
  CHECK_THROWS_AS(acgan::parse_config(dir / "missing.cfg"), acgan::IoError);
}

}  // TEST_SUITE
