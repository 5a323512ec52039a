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

#ifndef CDLAB_SEEDED_RNG_H_
#define CDLAB_SEEDED_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace cdlab {

// Mixes a base seed with a stream index. Replicate r of an experiment uses
// DeriveSeed(base, r); nested grids apply it repeatedly.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

// Platform-independent random source.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distribution layer is implemented here instead of using
// <random> distributions, whose algorithms are implementation-defined:
//   - UniformIndex: Lemire's multiply-shift with rejection (exactly uniform).
//   - UniformUnit: top 53 bits scaled by 2^-53, in [0, 1).
//   - Normal: Marsaglia polar method on UniformUnit pairs; the second
//     variate of each accepted pair is cached.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on {0, ..., bound - 1}. `bound` must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound);

  double UniformUnit();
  double Normal();

  // Fisher-Yates shuffle driven by UniformIndex.
  void Shuffle(std::vector<int>& values);
  std::vector<int> RandomPermutation(int n);

  Eigen::VectorXd NormalVector(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cdlab

#endif  // CDLAB_SEEDED_RNG_H_
