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
#include <set>

#include "acgan/error.hpp"
#include "doctest.h"

namespace data = acgan::data;
using acgan::Matrix;
using acgan::RngStream;

namespace {

std::size_t nearest(const data::ModeSpec& spec, double x, double y) {
  std::size_t best = 0;
  double best_d2 = INFINITY;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const double d2 = std::pow(x - spec.centers[m][0], 2) + std::pow(y - spec.centers[m][1], 2);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = m;
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("synth_data") {

TEST_CASE("ring geometry") {
  const auto ring = data::ring_spec(1.5);
  REQUIRE(ring.size() == 8);
  CHECK(ring.centers[0][0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::abs(ring.centers[0][1]) < 1e-15);
  double min_dist = INFINITY;
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(std::abs(std::hypot(ring.centers[i][0], ring.centers[i][1]) - 1.5) < 1e-12);
    for (std::size_t j = i + 1; j < 8; ++j) {
      min_dist = std::min(min_dist, std::hypot(ring.centers[i][0] - ring.centers[j][0],
                                               ring.centers[i][1] - ring.centers[j][1]));
    }
  }
  CHECK(std::abs(min_dist - 2 * 1.5 * std::sin(std::numbers::pi / 8)) < 1e-12);
  CHECK_THROWS_AS(data::ring_spec(0.0), acgan::ConfigError);
}

TEST_CASE("grid geometry") {
  const auto grid = data::grid_spec(2.0);
  REQUIRE(grid.size() == 25);
  CHECK(grid.centers[0] == data::Point{-4.0, -4.0});
  std::set<data::Point> distinct(grid.centers.begin(), grid.centers.end());
  CHECK(distinct.size() == 25);
  double sx = 0, sy = 0;
  for (const auto& c : grid.centers) {
    sx += c[0];
    sy += c[1];
  }
  CHECK(std::abs(sx / 25) < 1e-12);
  CHECK(std::abs(sy / 25) < 1e-12);
  CHECK_THROWS_AS(data::grid_spec(-1.0), acgan::ConfigError);
}

TEST_CASE("mode spec validation") {
  data::ModeSpec dup{{{0, 0}, {0, 0}}, 0.1, "dup"};
  CHECK_THROWS_AS(dup.validate(), acgan::ConfigError);
  data::ModeSpec flat{{{0, 0}}, 0.0, "flat"};
  CHECK_THROWS_AS(flat.validate(), acgan::ConfigError);
}

TEST_CASE("vanishing std puts samples on centers") {
  const auto spec = data::grid_spec(2.0, 1e-12);
  RngStream rng(3, "data");
  const Matrix x = data::sample_mixture(spec, 5000, rng);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto& c = spec.centers[nearest(spec, x(r, 0), x(r, 1))];
    REQUIRE(std::hypot(x(r, 0) - c[0], x(r, 1) - c[1]) < 1e-9);
  }
}

TEST_CASE("allowed modes restrict sampling") {
  const auto spec = data::ring_spec();
  RngStream rng(4, "data");
  const std::vector<std::size_t> only{0};
  const Matrix x = data::sample_mixture(spec, 10000, rng, only);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    REQUIRE(std::hypot(x(r, 0) - spec.centers[0][0], x(r, 1) - spec.centers[0][1]) < 6 * spec.std);
  }

  const std::vector<std::size_t> pair{2, 3};
  const Matrix y = data::sample_mixture(spec, 2000, rng, pair);
  for (std::size_t r = 0; r < y.rows(); ++r) {
    const auto m = nearest(spec, y(r, 0), y(r, 1));
    REQUIRE((m == 2 || m == 3));
  }

  const std::vector<std::size_t> none;
  CHECK_THROWS_AS(data::sample_mixture(spec, 10, rng, none), acgan::ConfigError);
  const std::vector<std::size_t> outside{8};
  CHECK_THROWS_AS(data::sample_mixture(spec, 10, rng, outside), acgan::ConfigError);
  CHECK_THROWS_AS(data::sample_mixture(spec, 0, rng), acgan::InputError);
}

TEST_CASE("mode frequencies over 1e6 draws") {
  const auto spec = data::grid_spec();
  RngStream rng(5, "data");
  const Matrix x = data::sample_mixture(spec, 1000000, rng);
  std::vector<double> freq(25, 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) freq[nearest(spec, x(r, 0), x(r, 1))] += 1e-6;
  for (double f : freq) CHECK(std::abs(f - 0.04) <= 0.005);
}

TEST_CASE("per-mode covariance is std^2 I") {
  const auto spec = data::ring_spec();
  RngStream rng(6, "data");
  const Matrix x = data::sample_mixture(spec, 100000, rng);
  std::vector<std::array<double, 4>> acc(8, {0, 0, 0, 0});  // n, sxx, syy, sxy
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto m = nearest(spec, x(r, 0), x(r, 1));
    const double dx = x(r, 0) - spec.centers[m][0];
    const double dy = x(r, 1) - spec.centers[m][1];
    acc[m][0] += 1;
    acc[m][1] += dx * dx;
    acc[m][2] += dy * dy;
    acc[m][3] += dx * dy;
  }
  const double var = spec.std * spec.std;
  for (const auto& a : acc) {
    CHECK(std::abs(a[1] / a[0] - var) <= 0.05 * var);
    CHECK(std::abs(a[2] / a[0] - var) <= 0.05 * var);
    CHECK(std::abs(a[3] / a[0]) <= 0.05 * var);
  }
}

TEST_CASE("prior") {
  RngStream a(7, "prior"), b(7, "prior");
  const Matrix za = data::sample_prior({3}, 17, a);
  CHECK(za.rows() == 17);
  CHECK(za.cols() == 3);
  CHECK(za == data::sample_prior({3}, 17, b));

  RngStream rng(8, "prior");
  const Matrix z = data::sample_prior({2}, 500000, rng);
  double s = 0, s2 = 0;
  for (double v : z.values()) {
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(z.size());
  const double mean = s / n;
  CHECK(std::abs(mean) <= 0.005);
  CHECK(std::abs(s2 / n - mean * mean - 1.0) <= 0.01);

  CHECK_THROWS_AS(data::sample_prior({0}, 4, rng), acgan::ConfigError);
  CHECK_THROWS_AS(data::sample_prior({2}, 0, rng), acgan::InputError);
}

TEST_CASE("seeded reproducibility") {
  const auto spec = data::grid_spec();
  RngStream a(9, "data"), b(9, "data"), c(10, "data");
  const Matrix xa = data::sample_mixture(spec, 1000, a);
  CHECK(xa == data::sample_mixture(spec, 1000, b));
  CHECK_FALSE(xa == data::sample_mixture(spec, 1000, c));
}

}  // TEST_SUITE
