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

#include "acgan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acgan/error.hpp"

namespace acgan::metrics {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdTol = 1e-12;

void check_psd(const Mat2& c) {
  const double scale = std::max({1.0, std::abs(c[0][0]), std::abs(c[1][1])});
  if (std::abs(c[0][1] - c[1][0]) > kSymmetryTol * scale) {
    throw InputError("covariance is not symmetric");
  }
  const double det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
  if (c[0][0] < -kPsdTol * scale || c[1][1] < -kPsdTol * scale || det < -kPsdTol * scale * scale) {
    throw InputError("covariance is not positive semidefinite");
  }
}

double det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

std::size_t bin_of(double v, double lo, double hi, std::size_t bins) {
  const double pos = (v - lo) / (hi - lo) * static_cast<double>(bins);
  return std::min(bins - 1, static_cast<std::size_t>(pos));
}

}  // namespace

MomentPair moments(const Matrix& samples) {
  if (samples.cols() != 2) throw InputError("moments: samples must have two columns");
  const std::size_t n = samples.rows();
  if (n < 2) throw InputError("moments: at least two samples required");
  MomentPair m;
  for (std::size_t r = 0; r < n; ++r) {
    m.mean[0] += samples(r, 0);
    m.mean[1] += samples(r, 1);
  }
  m.mean[0] /= static_cast<double>(n);
  m.mean[1] /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double dx = samples(r, 0) - m.mean[0];
    const double dy = samples(r, 1) - m.mean[1];
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double denom = static_cast<double>(n - 1);
  m.cov = {{{sxx / denom, sxy / denom}, {sxy / denom, syy / denom}}};
  return m;
}

double frechet_distance(const MomentPair& a, const MomentPair& b) {
  check_psd(a.cov);
  check_psd(b.cov);
  const double dx = a.mean[0] - b.mean[0];
  const double dy = a.mean[1] - b.mean[1];
  Mat2 prod{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) prod[i][j] = a.cov[i][0] * b.cov[0][j] + a.cov[i][1] * b.cov[1][j];
  }
  // det(C_a C_b) = det C_a det C_b, non-negative for PSD inputs.
  const double det = std::max(0.0, det2(a.cov) * det2(b.cov));
  const double tr = prod[0][0] + prod[1][1];
  const double tr_sqrt = std::sqrt(std::max(0.0, tr + 2.0 * std::sqrt(det)));
  const double traces = a.cov[0][0] + a.cov[1][1] + b.cov[0][0] + b.cov[1][1];
  const double fd = dx * dx + dy * dy + traces - 2.0 * tr_sqrt;
  // Anything within a few ulps of the summed terms is cancellation noise.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (dx * dx + dy * dy + traces);
  return fd <= floor ? 0.0 : fd;
}

CoverageReport coverage(const Matrix& samples, const data::ModeSpec& spec, double hq_multiplier,
                        std::size_t min_count) {
  if (samples.rows() == 0) throw InputError("coverage: no samples");
  if (samples.cols() != 2) throw InputError("coverage: samples must have two columns");
  CoverageReport report;
  report.per_mode_counts.assign(spec.size(), 0);
  const double radius = hq_multiplier * spec.std;
  std::size_t hq = 0;
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < spec.size(); ++m) {
      const double dx = samples(r, 0) - spec.centers[m][0];
      const double dy = samples(r, 1) - spec.centers[m][1];
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = m;
      }
    }
    if (std::sqrt(best_d2) <= radius) {
      ++hq;
      ++report.per_mode_counts[best];
    }
  }
  report.hq_fraction = static_cast<double>(hq) / static_cast<double>(samples.rows());
  report.modes_covered = static_cast<std::size_t>(
      std::count_if(report.per_mode_counts.begin(), report.per_mode_counts.end(),
                    [&](std::size_t c) { return c >= min_count; }));
  return report;
}

void GridSpec::validate() const {
  if (resolution < 2) throw ConfigError("grid resolution must be >= 2");
  if (!(x_max > x_min) || !(y_max > y_min)) throw ConfigError("grid ranges must be non-empty");
}

double GridSpec::x(std::size_t ix) const {
  return x_min + (x_max - x_min) * static_cast<double>(ix) / static_cast<double>(resolution - 1);
}

double GridSpec::y(std::size_t iy) const {
  return y_min + (y_max - y_min) * static_cast<double>(iy) / static_cast<double>(resolution - 1);
}

Matrix grid_points(const GridSpec& grid) {
  grid.validate();
  const std::size_t res = grid.resolution;
  Matrix pts(res * res, 2);
  for (std::size_t iy = 0; iy < res; ++iy) {
    for (std::size_t ix = 0; ix < res; ++ix) {
      pts(iy * res + ix, 0) = grid.x(ix);
      pts(iy * res + ix, 1) = grid.y(iy);
    }
  }
  return pts;
}

Matrix gradient_norm_field(const nn::MlpNetwork& d, const GridSpec& grid) {
  const auto norms = nn::input_gradient_norms(d, grid_points(grid));
  return Matrix(grid.resolution, grid.resolution, norms);
}

Histogram density_histogram(const Matrix& samples, const GridSpec& grid) {
  grid.validate();
  Histogram h{Matrix(grid.resolution, grid.resolution), 0};
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    const double x = samples(r, 0);
    const double y = samples(r, 1);
    if (!(x >= grid.x_min && x <= grid.x_max && y >= grid.y_min && y <= grid.y_max)) {
      ++h.overflow;
      continue;
    }
    const auto ix = bin_of(x, grid.x_min, grid.x_max, grid.resolution);
    const auto iy = bin_of(y, grid.y_min, grid.y_max, grid.resolution);
    h.counts(iy, ix) += 1.0;
  }
  return h;
}

double mean_value(const Matrix& m) {
  if (m.empty()) return 0.0;
  double s = 0.0;
  for (double v : m.values()) s += v;
  return s / static_cast<double>(m.size());
}

}  // namespace acgan::metrics
