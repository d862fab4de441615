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
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "acgan/matrix.hpp"
#include "acgan/metrics.hpp"

namespace acgan::io {

// Append-only CSV log that can be reopened at a recorded byte offset, which
// is how a resumed run drops rows written after its checkpoint.
class CsvLog {
 public:
  CsvLog() = default;
  // Creates (truncating) the file and writes the header line.
  static CsvLog create(const std::filesystem::path& path, const std::string& header);
  // Reopens an existing log, cutting it back to `offset` bytes.
  static CsvLog resume(const std::filesystem::path& path, std::uint64_t offset);

  void write_row(std::span<const double> values, std::uint64_t leading_index);
  std::uint64_t offset() const { return offset_; }
  const std::filesystem::path& path() const { return path_; }
  void flush() { out_.flush(); }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::uint64_t offset_ = 0;
};

// "x,y" header, one point per row.
void write_points_csv(const std::filesystem::path& path, const Matrix& points);
// One CSV row per lattice row (y), comma-separated norms along x, plus a
// JSON sidecar `<path>.json` describing the grid.
void write_field_csv(const std::filesystem::path& path, const Matrix& field,
                     const metrics::GridSpec& grid, std::size_t discriminator,
                     std::uint64_t iteration);
// Histogram counts in the same layout as the field dumps.
void write_histogram_csv(const std::filesystem::path& path, const metrics::Histogram& hist,
                         const metrics::GridSpec& grid);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);
void ensure_directory(const std::filesystem::path& dir);

// CRC-32 of a byte range, as hex text when formatted.
std::uint32_t crc32(std::span<const unsigned char> bytes);
std::string params_hash(std::span<const double> params);

}  // namespace acgan::io
