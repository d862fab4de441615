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

#include "acgan/optim.hpp"

#include <cmath>

#include "acgan/error.hpp"
#include "acgan/rng.hpp"
#include "doctest.h"

namespace optim = acgan::optim;
using optim::Direction;

namespace {

// Scalar Adam written out from the textbook update, kept apart from the
// library code.
struct ScalarAdam {
  double lr, b1, b2, eps;
  double m = 0.0, v = 0.0;
  int t = 0;
  double step(double x, double g) {
    ++t;
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g * g;
    const double mhat = m / (1 - std::pow(b1, t));
    const double vhat = v / (1 - std::pow(b2, t));
    return x - lr * mhat / (std::sqrt(vhat) + eps);
  }
};

}  // namespace

TEST_SUITE("optim") {

TEST_CASE("zero gradient on a fresh state leaves params alone") {
  for (auto kind : {optim::Kind::kAdam, optim::Kind::kRmsprop}) {
    optim::Hyperparams hp;
    hp.kind = kind;
    auto state = optim::make_state(hp, 3);
    std::vector<double> p{1.0, -2.0, 3.0};
    optim::step(state, p, std::vector<double>(3, 0.0), Direction::kMinimize);
    CHECK(p == std::vector<double>{1.0, -2.0, 3.0});
    CHECK(state.step_count == 1);
  }
}

TEST_CASE("first Adam step has the bias-corrected closed form") {
  auto state = optim::make_state({}, 1);
  std::vector<double> p{0.0};
  optim::step(state, p, std::vector<double>{1.0}, Direction::kMinimize);
  CHECK(p[0] == doctest::Approx(-0.0002 / (1 + 1e-8)).epsilon(1e-15));
}

TEST_CASE("100 Adam steps on x^2 follow the scalar trace") {
  auto state = optim::make_state({}, 1);
  ScalarAdam ref{2e-4, 0.5, 0.999, 1e-8};
  std::vector<double> p{1.0};
  double x = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double g = 2 * p[0];
    optim::step(state, p, std::vector<double>{g}, Direction::kMinimize);
    x = ref.step(x, 2 * x);
    REQUIRE(std::abs(p[0] - x) < 1e-12);
  }
  CHECK(state.step_count == 100);
}

TEST_CASE("RMSprop follows its running mean square") {
  optim::Hyperparams hp;
  hp.kind = optim::Kind::kRmsprop;
  hp.lr = 1e-4;
  auto state = optim::make_state(hp, 1);
  std::vector<double> p{0.5};
  double x = 0.5, v = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double g = std::sin(static_cast<double>(i)) + 2 * x;
    optim::step(state, p, std::vector<double>{g}, Direction::kMinimize);
    v = 0.9 * v + 0.1 * g * g;
    x -= 1e-4 * g / (std::sqrt(v) + 1e-8);
    REQUIRE(std::abs(p[0] - x) < 1e-14);
  }
}

TEST_CASE("maximize equals minimize on the negated gradient") {
  auto a = optim::make_state({}, 4);
  auto b = optim::make_state({}, 4);
  std::vector<double> pa{1, 2, 3, 4}, pb = pa;
  acgan::RngStream rng(1, "grads");
  for (int i = 0; i < 20; ++i) {
    std::vector<double> g(4), ng(4);
    for (int j = 0; j < 4; ++j) {
      g[j] = rng.normal();
      ng[j] = -g[j];
    }
    optim::step(a, pa, g, Direction::kMaximize);
    optim::step(b, pb, ng, Direction::kMinimize);
  }
  CHECK(pa == pb);
}

// Cauchy-Schwarz on the two moment sums bounds |m_hat| / sqrt(v_hat) at step t by
//   (1 - b1) sqrt(1 - b2^t) / ((1 - b1^t) sqrt(1 - b2)) * sqrt(sum_{j<t} (b1^2 / b2)^j).
TEST_CASE("Adam per-coordinate steps respect the moment bound") {
  optim::Hyperparams hp;
  auto state = optim::make_state(hp, 16);
  std::vector<double> p(16, 0.0);
  acgan::RngStream rng(2, "spiky");
  const double gamma = hp.beta1 * hp.beta1 / hp.beta2;
  double geometric = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double t = i + 1;
    geometric += std::pow(gamma, i);
    const double bound = hp.lr * (1 - hp.beta1) * std::sqrt(1 - std::pow(hp.beta2, t)) /
                         ((1 - std::pow(hp.beta1, t)) * std::sqrt(1 - hp.beta2)) * std::sqrt(geometric) *
                         (1 + 1e-12);
    std::vector<double> g(16);
    for (auto& v : g) v = rng.normal() * (rng.uniform() < 0.01 ? 1e6 : 1e-3);
    const auto before = p;
    optim::step(state, p, g, Direction::kMinimize);
    for (std::size_t j = 0; j < p.size(); ++j) REQUIRE(std::abs(p[j] - before[j]) <= bound);
  }
}

TEST_CASE("bad inputs") {
  auto state = optim::make_state({}, 2);
  std::vector<double> p{1.0, 2.0};
  CHECK_THROWS_AS(optim::step(state, p, std::vector<double>{1.0}, Direction::kMinimize), acgan::ConfigError);

  const auto before = state;
  CHECK_THROWS_AS(optim::step(state, p, std::vector<double>{1.0, NAN}, Direction::kMinimize),
                  acgan::NumericError);
  CHECK(p == std::vector<double>{1.0, 2.0});
  CHECK(state == before);

  optim::Hyperparams hp;
  hp.lr = 0.0;
  auto zero_lr = optim::make_state(hp, 2);
  CHECK_THROWS_AS(optim::step(zero_lr, p, std::vector<double>{1.0, 1.0}, Direction::kMinimize),
                  acgan::ConfigError);
}

}  // TEST_SUITE
