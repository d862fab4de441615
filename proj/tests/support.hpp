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

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "acgan/config.hpp"
#include "acgan/matrix.hpp"
#include "acgan/nn.hpp"
#include "acgan/rng.hpp"

namespace acgan::test {

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                            double scale = 1.0) {
  Matrix m(rows, cols);
  RngStream rng(seed, "test-matrix");
  rng.fill_normal(m, scale);
  return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// `dir`, emptied and recreated.
inline std::filesystem::path scratch_dir_at(const std::filesystem::path& dir) {
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Scratch directory under the system temp dir, emptied on creation.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("acgan-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// A grid25 run small enough for unit tests: tiny networks, short horizon.
inline RunConfig tiny_config(const std::filesystem::path& dir, const KeyValues& extra = {}) {
  KeyValues kv{{"dataset", "grid25"},   {"generator", "16,16"},    {"discriminators", "8;8,8;8,8,8"},
               {"batch_size", "24"},    {"iterations", "60"},      {"eval_interval", "20"},
               {"eval_samples", "400"}, {"reward_batch", "64"},    {"gradfield_resolution", "8"},
               {"warmup", "10"},        {"output_dir", dir.string()}};
  for (const auto& [k, v] : extra) kv[k] = v;
  return resolve_config(kv);
}

}  // namespace acgan::test
