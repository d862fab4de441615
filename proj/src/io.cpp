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

#include "acgan/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "acgan/config.hpp"
#include "acgan/error.hpp"
#include "json.hpp"

namespace acgan::io {

CsvLog CsvLog::create(const std::filesystem::path& path, const std::string& header) {
  CsvLog log;
  log.path_ = path;
  log.out_.open(path, std::ios::binary | std::ios::trunc);
  if (!log.out_) throw IoError("cannot create " + path.string());
  log.out_ << header << '\n';
  log.offset_ = header.size() + 1;
  return log;
}

CsvLog CsvLog::resume(const std::filesystem::path& path, std::uint64_t offset) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || size < offset) throw IoError("cannot resume log " + path.string() + ": file is shorter than recorded");
  std::filesystem::resize_file(path, offset, ec);
  if (ec) throw IoError("cannot truncate " + path.string());
  CsvLog log;
  log.path_ = path;
  log.out_.open(path, std::ios::binary | std::ios::app);
  if (!log.out_) throw IoError("cannot reopen " + path.string());
  log.offset_ = offset;
  return log;
}

void CsvLog::write_row(std::span<const double> values, std::uint64_t leading_index) {
  std::string line = std::to_string(leading_index);
  for (double v : values) {
    line += ',';
    line += format_double(v);
  }
  line += '\n';
  out_ << line;
  if (!out_) throw IoError("write failed on " + path_.string());
  offset_ += line.size();
}

void write_points_csv(const std::filesystem::path& path, const Matrix& points) {
  std::string text = "x,y\n";
  for (std::size_t r = 0; r < points.rows(); ++r) {
    text += format_double(points(r, 0));
    text += ',';
    text += format_double(points(r, 1));
    text += '\n';
  }
  write_file(path, text);
}

namespace {

std::string matrix_rows_csv(const Matrix& m) {
  std::string text;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) text += ',';
      text += format_double(m(r, c));
    }
    text += '\n';
  }
  return text;
}

nlohmann::json grid_json(const metrics::GridSpec& grid) {
  return {{"x_range", {grid.x_min, grid.x_max}},
          {"y_range", {grid.y_min, grid.y_max}},
          {"resolution", grid.resolution},
          {"layout", "rows follow y ascending, columns follow x ascending"}};
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const Matrix& field,
                     const metrics::GridSpec& grid, std::size_t discriminator,
                     std::uint64_t iteration) {
  write_file(path, matrix_rows_csv(field));
  auto meta = grid_json(grid);
  meta["quantity"] = "input_gradient_norm";
  meta["discriminator"] = discriminator;
  meta["iteration"] = iteration;
  meta["mean"] = metrics::mean_value(field);
  write_file(path.string() + ".json", meta.dump(2) + "\n");
}

void write_histogram_csv(const std::filesystem::path& path, const metrics::Histogram& hist,
                         const metrics::GridSpec& grid) {
  write_file(path, matrix_rows_csv(hist.counts));
  auto meta = grid_json(grid);
  meta["quantity"] = "sample_count";
  meta["overflow"] = hist.overflow;
  write_file(path.string() + ".json", meta.dump(2) + "\n");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed on " + path.string());
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::uint32_t crc32(std::span<const unsigned char> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in pieces.
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - pos, 1u << 30));
    crc = ::crc32(crc, bytes.data() + pos, chunk);
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::string params_hash(std::span<const double> params) {
  const auto crc = crc32({reinterpret_cast<const unsigned char*>(params.data()),
                          params.size() * sizeof(double)});
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x", crc);
  return buf;
}

}  // namespace acgan::io
