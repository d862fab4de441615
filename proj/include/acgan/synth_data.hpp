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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acgan/matrix.hpp"
#include "acgan/rng.hpp"

namespace acgan::data {

using Point = std::array<double, 2>;

// Isotropic Gaussian mixture in the plane with equal mode weights.
struct ModeSpec {
  std::vector<Point> centers;
  double std = 0.05;
  std::string name;

  std::size_t size() const { return centers.size(); }
  void validate() const;
};

struct PriorSpec {
  std::size_t dim = 2;
};

inline constexpr double kRingRadius = 1.5;
inline constexpr double kGridSpacing = 2.0;
inline constexpr double kModeStd = 0.05;

// Eight centers at angles k * 45 degrees on a circle.
ModeSpec ring_spec(double radius = kRingRadius, double std = kModeStd);
// 5 x 5 centers at {-2s, -s, 0, s, 2s}^2, row-major in y then x.
ModeSpec grid_spec(double spacing = kGridSpacing, double std = kModeStd);

// n points; the mode is uniform over `allowed_modes` (all modes when absent).
Matrix sample_mixture(const ModeSpec& spec, std::size_t n, RngStream& rng,
                      std::optional<std::span<const std::size_t>> allowed_modes = std::nullopt);

// n x dim standard normal draws.
Matrix sample_prior(const PriorSpec& spec, std::size_t n, RngStream& rng);

}  // namespace acgan::data
