// Copyright 2026 The cdlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdlab/seeded_rng.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cdlab {
namespace {

__extension__ using Uint128 = unsigned __int128;

std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream) {
  return SplitMix64(SplitMix64(base) ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
}

SeededRng::SeededRng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

std::uint64_t SeededRng::UniformIndex(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformIndex: bound must be positive");
  Uint128 product = static_cast<Uint128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<Uint128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double SeededRng::UniformUnit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * UniformUnit() - 1.0;
    v = 2.0 * UniformUnit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

void SeededRng::Shuffle(std::vector<int>& values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(UniformIndex(i));
    std::swap(values[i - 1], values[j]);
  }
}

std::vector<int> SeededRng::RandomPermutation(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order);
  return order;
}

Eigen::VectorXd SeededRng::NormalVector(int n) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = Normal();
  return x;
}

}  // namespace cdlab
