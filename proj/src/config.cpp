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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "acgan/error.hpp"

namespace acgan {
namespace {

using curriculum::Variant;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& why) {
  throw ConfigError("config key '" + key + "': invalid value '" + value + "' (" + why + ")");
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) bad_value(key, v, "expected a non-negative integer");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) bad_value(key, v, "expected a number");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, v, "expected true or false");
}

std::vector<std::size_t> to_size_list(const std::string& key, const std::string& v) {
  std::vector<std::size_t> out;
  if (v.empty() || v == "-") return out;
  for (const auto& item : split(v, ',')) out.push_back(to_u64(key, item));
  return out;
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.empty()) return out;
  for (const auto& item : split(v, ',')) out.push_back(to_double(key, item));
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, const std::string& sep, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += fmt(items[i]);
  }
  return out;
}

std::string size_list(const std::vector<std::size_t>& v) {
  if (v.empty()) return "-";
  return join(v, ",", [](std::size_t x) { return std::to_string(x); });
}

// Rethrows parse failures of enum-valued keys with the key name attached.
template <typename F>
auto keyed(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"dataset", [](RunConfig&, const std::string&, const std::string&) {}},
      {"variant", [](RunConfig&, const std::string&, const std::string&) {}},
      {"generator",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.generator_hidden = to_size_list(k, v);
       }},
      {"generator_activation",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.generator_activation = keyed(k, [&] { return nn::parse_activation(v); });
       }},
      {"discriminators",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.discriminator_hidden.clear();
         for (const auto& net : split(v, ';')) c.discriminator_hidden.push_back(to_size_list(k, net));
       }},
      {"discriminator_activations",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.discriminator_activations.clear();
         for (const auto& a : split(v, ',')) {
           c.discriminator_activations.push_back(keyed(k, [&] { return nn::parse_activation(a); }));
         }
       }},
      {"leaky_slope",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.leaky_slope = to_double(k, v); }},
      {"prior_dim",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.prior_dim = to_u64(k, v); }},
      {"optimizer",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.optimizer.kind = keyed(k, [&] { return optim::parse_kind(v); });
       }},
      {"lr", [](RunConfig& c, const std::string& k, const std::string& v) { c.optimizer.lr = to_double(k, v); }},
      {"beta1",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.optimizer.beta1 = to_double(k, v); }},
      {"beta2",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.optimizer.beta2 = to_double(k, v); }},
      {"rmsprop_decay",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.optimizer.decay = to_double(k, v); }},
      {"eps", [](RunConfig& c, const std::string& k, const std::string& v) { c.optimizer.eps = to_double(k, v); }},
      {"lambda",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.bandit.lambda = to_double(k, v); }},
      {"alpha",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.bandit.alpha = to_double(k, v); }},
      {"warmup",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.bandit.warmup = to_u64(k, v); }},
      {"reward",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.bandit.reward_kind = keyed(k, [&] { return curriculum::parse_reward_kind(v); });
       }},
      {"allocation",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "mixture") {
           c.allocation = Allocation::kMixture;
         } else if (v == "sample") {
           c.allocation = Allocation::kSample;
         } else {
           bad_value(k, v, "expected mixture or sample");
         }
       }},
      {"noise_sigmas",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         auto sigmas = to_double_list(k, v);
         if (sigmas.empty()) {
           c.noise.reset();
         } else {
           if (!c.noise) c.noise = gan::NoiseSchedule{};
           c.noise->sigmas = std::move(sigmas);
         }
       }},
      {"noise_decay",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         // Applied after noise_sigmas; see resolve_config.
         if (c.noise) c.noise->decay = to_double(k, v);
       }},
      {"batch_size",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.batch_size = to_u64(k, v); }},
      {"iterations",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.iterations = to_u64(k, v); }},
      {"epoch_iterations",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.epoch_iterations = to_u64(k, v); }},
      {"epochs", [](RunConfig&, const std::string&, const std::string&) {}},
      {"eval_interval",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.eval_interval = to_u64(k, v); }},
      {"eval_samples",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.eval_samples = to_u64(k, v); }},
      {"reward_batch",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.reward_batch = to_u64(k, v); }},
      {"hq_multiplier",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.hq_multiplier = to_double(k, v); }},
      {"min_count",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.min_count = to_u64(k, v); }},
      {"gradfield_resolution",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.gradfield_resolution = to_u64(k, v); }},
      {"gradfield_extent",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.gradfield_extent = to_double(k, v); }},
      {"gradfield_interval",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.gradfield_interval = to_u64(k, v); }},
      {"sample_dump",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.sample_dump = to_bool(k, v); }},
      {"checkpoint_interval",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.checkpoint_interval = to_u64(k, v); }},
      {"ring_radius",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.ring_radius = to_double(k, v); }},
      {"grid_spacing",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.grid_spacing = to_double(k, v); }},
      {"mode_std",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.mode_std = to_double(k, v); }},
      {"train_modes",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.train_modes = to_size_list(k, v); }},
      {"pretrain_modes",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.pretrain_modes = to_size_list(k, v); }},
      {"pretrain_iterations",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.pretrain_iterations = to_u64(k, v); }},
      {"seed", [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = to_u64(k, v); }},
      {"output_dir",
       [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; }},
  };
  return table;
}

// Keys in the order serialize_config writes them.
const std::vector<std::string>& key_order() {
  static const std::vector<std::string> order = {
      "dataset", "variant", "generator", "generator_activation", "discriminators",
      "discriminator_activations", "leaky_slope", "prior_dim", "optimizer", "lr", "beta1", "beta2",
      "rmsprop_decay", "eps", "lambda", "alpha", "warmup", "reward", "allocation", "noise_sigmas",
      "noise_decay", "batch_size", "iterations", "epoch_iterations", "eval_interval",
      "eval_samples", "reward_batch", "hq_multiplier", "min_count", "gradfield_resolution",
      "gradfield_extent", "gradfield_interval", "sample_dump", "checkpoint_interval",
      "ring_radius", "grid_spacing", "mode_std", "train_modes", "pretrain_modes",
      "pretrain_iterations", "seed", "output_dir"};
  return order;
}

void apply_dataset_defaults(RunConfig& c) {
  const bool ring = c.dataset == Dataset::kRing8;
  const std::size_t width = ring ? 400 : 512;
  const std::size_t g_depth = ring ? 3 : 4;
  c.generator_hidden.assign(g_depth, width);
  c.discriminator_hidden.clear();
  // Capacity ladder: ring uses 1, 2, 3 hidden layers; grid uses 2, 3, 4.
  const std::size_t first_depth = ring ? 1 : 2;
  if (c.variant == Variant::kVanilla) {
    c.discriminator_hidden.push_back(std::vector<std::size_t>(first_depth + 2, width));
  } else {
    for (std::size_t d = 0; d < 3; ++d) {
      c.discriminator_hidden.push_back(std::vector<std::size_t>(first_depth + d, width));
    }
  }
  c.iterations = ring ? 5000 : 7500;
  c.optimizer.lr = ring ? 1e-4 : 2e-4;
}

}  // namespace

std::string_view to_string(Dataset d) { return d == Dataset::kRing8 ? "ring8" : "grid25"; }
std::string_view to_string(Allocation a) {
  return a == Allocation::kMixture ? "mixture" : "sample";
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw InputError("format_double failed");
  return std::string(buf, ptr);
}

data::ModeSpec RunConfig::mode_spec() const {
  return dataset == Dataset::kRing8 ? data::ring_spec(ring_radius, mode_std)
                                    : data::grid_spec(grid_spacing, mode_std);
}

std::vector<nn::LayerSpec> RunConfig::generator_layers() const {
  return nn::mlp_layers(prior_dim, generator_hidden, 2, generator_activation,
                        nn::Activation::kLinear, leaky_slope);
}

std::vector<nn::LayerSpec> RunConfig::discriminator_layers(std::size_t i) const {
  return nn::mlp_layers(2, discriminator_hidden.at(i), 1, discriminator_activations.at(i),
                        nn::Activation::kSigmoid, leaky_slope);
}

void RunConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
  };
  const std::size_t n = num_discriminators();
  if (n == 0) fail("discriminators", "at least one discriminator required");
  if (discriminator_activations.size() != n) {
    fail("discriminator_activations", "one activation per discriminator required");
  }
  if (variant == Variant::kVanilla && n != 1) fail("discriminators", "vanilla uses exactly one discriminator");
  if (bandit.n != n) fail("discriminators", "bandit size does not match the ensemble");
  if (batch_size == 0) fail("batch_size", "must be positive");
  if (batch_size % n != 0) {
    fail("batch_size", std::to_string(batch_size) + " is not divisible by N = " + std::to_string(n));
  }
  if (prior_dim == 0) fail("prior_dim", "must be positive");
  if (!(leaky_slope > 0.0 && leaky_slope < 1.0)) fail("leaky_slope", "must lie in (0, 1)");
  if (!(optimizer.lr > 0.0)) fail("lr", "must be positive");
  if (!(optimizer.beta1 >= 0.0 && optimizer.beta1 < 1.0)) fail("beta1", "must lie in [0, 1)");
  if (!(optimizer.beta2 >= 0.0 && optimizer.beta2 < 1.0)) fail("beta2", "must lie in [0, 1)");
  if (!(optimizer.decay >= 0.0 && optimizer.decay < 1.0)) fail("rmsprop_decay", "must lie in [0, 1)");
  if (!(optimizer.eps > 0.0)) fail("eps", "must be positive");
  if (!(bandit.lambda >= 0.0)) fail("lambda", "must be non-negative");
  if (!(bandit.alpha > 0.0 && bandit.alpha <= 1.0)) fail("alpha", "must lie in (0, 1]");
  if (noise) {
    if (noise->sigmas.size() != n) fail("noise_sigmas", "one sigma per discriminator required");
    for (double s : noise->sigmas) {
      if (!(s >= 0.0)) fail("noise_sigmas", "sigmas must be non-negative");
    }
    if (!(noise->decay > 0.0)) fail("noise_decay", "must be positive");
  }
  if (iterations == 0) fail("iterations", "must be positive");
  if (epoch_iterations == 0) fail("epoch_iterations", "must be positive");
  if (eval_interval == 0) fail("eval_interval", "must be positive");
  if (eval_samples < 2) fail("eval_samples", "must be at least 2");
  if (reward_batch == 0) fail("reward_batch", "must be positive");
  if (!(hq_multiplier > 0.0)) fail("hq_multiplier", "must be positive");
  if (gradfield_resolution < 2) fail("gradfield_resolution", "must be at least 2");
  if (!(gradfield_extent > 0.0)) fail("gradfield_extent", "must be positive");
  if (!(ring_radius > 0.0)) fail("ring_radius", "must be positive");
  if (!(grid_spacing > 0.0)) fail("grid_spacing", "must be positive");
  if (!(mode_std > 0.0)) fail("mode_std", "must be positive");
  const std::size_t modes = dataset == Dataset::kRing8 ? 8 : 25;
  for (std::size_t m : train_modes) {
    if (m >= modes) fail("train_modes", "mode index out of range");
  }
  for (std::size_t m : pretrain_modes) {
    if (m >= modes) fail("pretrain_modes", "mode index out of range");
  }
  if (output_dir.empty()) fail("output_dir", "must not be empty");
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

RunConfig resolve_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (!setters().contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  if (auto it = kv.find("dataset"); it != kv.end()) {
    if (it->second == "ring8") {
      c.dataset = Dataset::kRing8;
    } else if (it->second == "grid25") {
      c.dataset = Dataset::kGrid25;
    } else {
      bad_value("dataset", it->second, "expected ring8 or grid25");
    }
  }
  if (auto it = kv.find("variant"); it != kv.end()) {
    c.variant = keyed("variant", [&] { return curriculum::parse_variant(it->second); });
  }
  apply_dataset_defaults(c);

  // noise_decay depends on noise_sigmas having been applied.
  for (const auto& [key, value] : kv) {
    if (key != "noise_decay") setters().at(key)(c, key, value);
  }
  if (auto it = kv.find("noise_decay"); it != kv.end()) {
    if (!c.noise) throw ConfigError("config key 'noise_decay': requires noise_sigmas");
    setters().at("noise_decay")(c, "noise_decay", it->second);
  }
  if (auto it = kv.find("epochs"); it != kv.end()) {
    if (kv.contains("iterations")) throw ConfigError("config key 'epochs': conflicts with 'iterations'");
    c.iterations = to_u64("epochs", it->second) * c.epoch_iterations;
  }

  const std::size_t n = c.num_discriminators();
  if (!kv.contains("discriminator_activations")) {
    c.discriminator_activations.assign(n, nn::Activation::kRelu);
  }
  c.bandit.n = n;
  c.bandit.variant = c.variant;
  if (!kv.contains("warmup")) c.bandit.warmup = 15 * static_cast<std::uint64_t>(n);
  if (!kv.contains("output_dir")) {
    c.output_dir = "runs/" + std::string(to_string(c.dataset)) + "-" +
                   std::string(curriculum::to_string(c.variant)) + "-s" + std::to_string(c.seed);
  }
  c.validate();
  return c;
}

RunConfig parse_config_text(const std::string& text, const KeyValues& overrides) {
  KeyValues kv = parse_key_values(text);
  for (const auto& [k, v] : overrides) kv[k] = v;
  return resolve_config(kv);
}

RunConfig parse_config(const std::filesystem::path& path, const KeyValues& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), overrides);
}

KeyValues to_key_values(const RunConfig& c) {
  KeyValues kv;
  kv["dataset"] = std::string(to_string(c.dataset));
  kv["variant"] = std::string(curriculum::to_string(c.variant));
  kv["generator"] = size_list(c.generator_hidden);
  kv["generator_activation"] = std::string(nn::to_string(c.generator_activation));
  kv["discriminators"] = join(c.discriminator_hidden, ";", size_list);
  kv["discriminator_activations"] =
      join(c.discriminator_activations, ",", [](nn::Activation a) { return std::string(nn::to_string(a)); });
  kv["leaky_slope"] = format_double(c.leaky_slope);
  kv["prior_dim"] = std::to_string(c.prior_dim);
  kv["optimizer"] = std::string(optim::to_string(c.optimizer.kind));
  kv["lr"] = format_double(c.optimizer.lr);
  kv["beta1"] = format_double(c.optimizer.beta1);
  kv["beta2"] = format_double(c.optimizer.beta2);
  kv["rmsprop_decay"] = format_double(c.optimizer.decay);
  kv["eps"] = format_double(c.optimizer.eps);
  kv["lambda"] = format_double(c.bandit.lambda);
  kv["alpha"] = format_double(c.bandit.alpha);
  kv["warmup"] = std::to_string(c.bandit.warmup);
  kv["reward"] = std::string(curriculum::to_string(c.bandit.reward_kind));
  kv["allocation"] = std::string(to_string(c.allocation));
  kv["noise_sigmas"] = c.noise ? join(c.noise->sigmas, ",", format_double) : "";
  if (c.noise) kv["noise_decay"] = format_double(c.noise->decay);
  kv["batch_size"] = std::to_string(c.batch_size);
  kv["iterations"] = std::to_string(c.iterations);
  kv["epoch_iterations"] = std::to_string(c.epoch_iterations);
  kv["eval_interval"] = std::to_string(c.eval_interval);
  kv["eval_samples"] = std::to_string(c.eval_samples);
  kv["reward_batch"] = std::to_string(c.reward_batch);
  kv["hq_multiplier"] = format_double(c.hq_multiplier);
  kv["min_count"] = std::to_string(c.min_count);
  kv["gradfield_resolution"] = std::to_string(c.gradfield_resolution);
  kv["gradfield_extent"] = format_double(c.gradfield_extent);
  kv["gradfield_interval"] = std::to_string(c.gradfield_interval);
  kv["sample_dump"] = c.sample_dump ? "true" : "false";
  kv["checkpoint_interval"] = std::to_string(c.checkpoint_interval);
  kv["ring_radius"] = format_double(c.ring_radius);
  kv["grid_spacing"] = format_double(c.grid_spacing);
  kv["mode_std"] = format_double(c.mode_std);
  kv["train_modes"] = size_list(c.train_modes);
  kv["pretrain_modes"] = size_list(c.pretrain_modes);
  kv["pretrain_iterations"] = std::to_string(c.pretrain_iterations);
  kv["seed"] = std::to_string(c.seed);
  kv["output_dir"] = c.output_dir;
  return kv;
}

std::string serialize_config(const RunConfig& config) {
  const KeyValues kv = to_key_values(config);
  std::string out;
  for (const auto& key : key_order()) {
    if (auto it = kv.find(key); it != kv.end()) out += key + " = " + it->second + "\n";
  }
  return out;
}

}  // namespace acgan
