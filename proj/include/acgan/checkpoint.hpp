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
#include <string>
#include <vector>

#include "acgan/curriculum.hpp"
#include "acgan/gan.hpp"
#include "acgan/rng.hpp"

namespace acgan {

struct MetricsRow {
  std::uint64_t iteration = 0;
  double fd = 0.0;
  std::size_t modes_covered = 0;
  double hq_fraction = 0.0;

  bool operator==(const MetricsRow&) const = default;
};

// Everything a run mutates. Restoring it reproduces the remainder of the run
// exactly.
struct TrainingState {
  std::uint64_t t = 0;  // completed iterations
  gan::GeneratorHandle generator;
  gan::Ensemble ensemble;
  curriculum::BanditState bandit;
  RunStreams streams;
  std::vector<double> pi_history;  // t rows of N weights
  std::vector<MetricsRow> metrics;
  std::uint64_t policy_log_offset = 0;
  std::uint64_t metrics_log_offset = 0;

  bool operator==(const TrainingState&) const;
};

struct Checkpoint {
  static constexpr std::uint32_t kFormatVersion = 1;
  std::string config_text;
  TrainingState state;
};

// Layout, all integers and doubles little-endian:
//   "ACGANCKP" | u32 version | u64 payload length | payload | u32 CRC-32(payload)
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
// Throws IoError on a missing file, bad magic, version mismatch, truncation,
// or checksum failure.
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string encode_checkpoint(const Checkpoint& checkpoint);
Checkpoint decode_checkpoint(const std::string& bytes);

}  // namespace acgan
