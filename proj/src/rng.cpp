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

#include "acgan/rng.hpp"

#include <cmath>
#include <numbers>

#include "acgan/error.hpp"

namespace acgan {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view label) {
  state_.key = mix64(mix64(seed + kGolden) ^ fnv1a(label));
  state_.counter = 0;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t x = state_.key + (++state_.counter) * kGolden;
  return mix64(x);
}

double RngStream::uniform() {
  // 53 random mantissa bits, shifted off zero.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw InputError("RngStream::below: empty range");
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % n;
}

void RngStream::fill_normal(Matrix& m, double stddev) {
  for (double& v : m.values()) v = stddev * normal();
}

RunStreams::RunStreams(std::uint64_t seed)
    : data(seed, "data"),
      prior(seed, "prior"),
      noise(seed, "noise"),
      reward(seed, "reward"),
      allocation(seed, "allocation") {}

}  // namespace acgan
