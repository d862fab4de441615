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

#include <array>
#include <cstddef>
#include <vector>

#include "acgan/matrix.hpp"
#include "acgan/nn.hpp"
#include "acgan/synth_data.hpp"

namespace acgan::metrics {

using Mat2 = std::array<std::array<double, 2>, 2>;

struct MomentPair {
  std::array<double, 2> mean{};
  Mat2 cov{};
};

// Sample mean and unbiased covariance of an n x 2 matrix, n >= 2.
MomentPair moments(const Matrix& samples);

// ||m_a - m_b||^2 + Tr(C_a + C_b - 2 (C_a C_b)^{1/2}). For 2 x 2 inputs the
// trace of the square root is sqrt(tr M + 2 sqrt(det M)), M = C_a C_b.
// Values within 64 ulps of the summed terms are reported as exactly 0.
// Throws InputError when a covariance is asymmetric or not PSD.
double frechet_distance(const MomentPair& a, const MomentPair& b);

struct CoverageReport {
  std::size_t modes_covered = 0;
  double hq_fraction = 0.0;
  std::vector<std::size_t> per_mode_counts;  // HQ samples per nearest mode
};

// A sample is high quality when its nearest center lies within
// hq_multiplier * std; a mode is covered with >= min_count HQ samples.
CoverageReport coverage(const Matrix& samples, const data::ModeSpec& spec,
                        double hq_multiplier = 3.0, std::size_t min_count = 1);

struct GridSpec {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = -2.0;
  double y_max = 2.0;
  std::size_t resolution = 200;

  void validate() const;
  // Lattice coordinates, endpoints included.
  double x(std::size_t ix) const;
  double y(std::size_t iy) const;
};

// All lattice points, y-outer / x-inner, as a resolution^2 x 2 matrix.
Matrix grid_points(const GridSpec& grid);

// ||grad_x D(x)|| on the lattice: entry (iy, ix) holds the norm at
// (x(ix), y(iy)).
Matrix gradient_norm_field(const nn::MlpNetwork& d, const GridSpec& grid);

struct Histogram {
  Matrix counts;  // resolution x resolution bins, row = y bin
  std::size_t overflow = 0;
};

// Equal-width bins over the grid ranges; points outside go to `overflow`.
Histogram density_histogram(const Matrix& samples, const GridSpec& grid);

double mean_value(const Matrix& m);

}  // namespace acgan::metrics
