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

#include "acgan/synth_data.hpp"

#include <cmath>
#include <numbers>

#include "acgan/error.hpp"

namespace acgan::data {

void ModeSpec::validate() const {
  if (centers.empty()) throw ConfigError("mode spec has no centers");
  if (!(std > 0.0)) throw ConfigError("mode std must be positive");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      if (centers[i] == centers[j]) throw ConfigError("mode centers must be distinct");
    }
  }
}

ModeSpec ring_spec(double radius, double std) {
  if (!(radius > 0.0)) throw ConfigError("ring radius must be positive");
  ModeSpec spec;
  spec.name = "ring8";
  spec.std = std;
  for (int k = 0; k < 8; ++k) {
    const double angle = k * std::numbers::pi / 4.0;
    spec.centers.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  spec.validate();
  return spec;
}

ModeSpec grid_spec(double spacing, double std) {
  if (!(spacing > 0.0)) throw ConfigError("grid spacing must be positive");
  ModeSpec spec;
  spec.name = "grid25";
  spec.std = std;
  for (int iy = -2; iy <= 2; ++iy) {
    for (int ix = -2; ix <= 2; ++ix) spec.centers.push_back({ix * spacing, iy * spacing});
  }
  spec.validate();
  return spec;
}

Matrix sample_mixture(const ModeSpec& spec, std::size_t n, RngStream& rng,
                      std::optional<std::span<const std::size_t>> allowed_modes) {
  if (n == 0) throw InputError("sample_mixture: n must be >= 1");
  if (allowed_modes) {
    if (allowed_modes->empty()) throw ConfigError("sample_mixture: empty allowed-mode set");
    for (std::size_t m : *allowed_modes) {
      if (m >= spec.size()) throw ConfigError("sample_mixture: allowed mode index out of range");
    }
  }
  Matrix out(n, 2);
  const std::size_t choices = allowed_modes ? allowed_modes->size() : spec.size();
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t pick = rng.below(choices);
    const Point& c = spec.centers[allowed_modes ? (*allowed_modes)[pick] : pick];
    out(r, 0) = c[0] + spec.std * rng.normal();
    out(r, 1) = c[1] + spec.std * rng.normal();
  }
  return out;
}

Matrix sample_prior(const PriorSpec& spec, std::size_t n, RngStream& rng) {
  if (n == 0) throw InputError("sample_prior: n must be >= 1");
  if (spec.dim == 0) throw ConfigError("prior dimension must be >= 1");
  Matrix z(n, spec.dim);
  rng.fill_normal(z);
  return z;
}

}  // namespace acgan::data
