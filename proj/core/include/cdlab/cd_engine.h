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

#ifndef CDLAB_CD_ENGINE_H_
#define CDLAB_CD_ENGINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdlab/quadratic_model.h"

namespace cdlab {

// Raised when an iteration produces a nonfinite value or an iterative
// estimate fails to settle.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double last_value = 0.0)
      : std::runtime_error(what), last_value_(last_value) {}
  double last_value() const { return last_value_; }

 private:
  double last_value_;
};

// A visiting order over {0, ..., n-1}: epoch step j updates coordinate
// order()[j]. As a matrix, P e_j = e_{order[j]}, so (P^T x)_j = x_{order[j]}.
class Permutation {
 public:
  // Throws std::invalid_argument unless `order` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<int> order);
  static Permutation Identity(int n);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }
  int operator[](int j) const { return order_[static_cast<std::size_t>(j)]; }

  Matrix ToMatrix() const;

 private:
  std::vector<int> order_;
};

struct OrderingPolicy {
  enum class Kind { kCyclic, kRandomWithReplacement, kRandomPermutation, kFixedPermutation };

  Kind kind = Kind::kCyclic;
  std::optional<Permutation> fixed;  // set iff kind == kFixedPermutation

  static OrderingPolicy Cyclic() { return {Kind::kCyclic, std::nullopt}; }
  static OrderingPolicy RandomWithReplacement() {
    return {Kind::kRandomWithReplacement, std::nullopt};
  }
  static OrderingPolicy RandomPermutation() {
    return {Kind::kRandomPermutation, std::nullopt};
  }
  static OrderingPolicy FixedPermutation(Permutation p) {
    return {Kind::kFixedPermutation, std::move(p)};
  }
};

// "ccd", "rcd", "rpcd"; throws std::invalid_argument otherwise.
OrderingPolicy ParseOrderingPolicy(std::string_view name);
std::string_view PolicyName(OrderingPolicy::Kind kind);

struct RunOptions {
  int max_epochs = 1000000;
  double tol = 1e-8;  // stop once f(x^{ln}) <= tol (f* = 0)
  std::uint64_t seed = 0;
  bool record_iterates = false;  // x^{ln} for every epoch
  bool record_orders = false;    // coordinates visited in every epoch
};

struct Trajectory {
  std::vector<double> f_per_epoch;  // f(x^{ln}), l = 0, 1, ...
  Vector final_x;
  std::int64_t iterations = 0;
  bool converged = false;
  std::vector<Vector> iterates;
  std::vector<std::vector<int>> orders;

  int epochs() const { return static_cast<int>(f_per_epoch.size()) - 1; }
};

// Coordinate descent with exact line search. Each epoch performs n single
// coordinate updates in the order given by `policy`; f is recorded after
// every epoch. Deterministic in (model, policy, x0, options).
// Throws std::invalid_argument on a length mismatch or negative tol, and
// NumericalError if f becomes nonfinite.
Trajectory Run(const QuadraticModel& model, const OrderingPolicy& policy,
               const Vector& x0, const RunOptions& options);

// The single-epoch CCD map C = -(L + D)^{-1} L^T for the splitting
// A = L + D + L^T.
struct EpochMatrix {
  Matrix values;
  int n() const { return static_cast<int>(values.rows()); }
};

// C computed by forward substitution with the lower triangle of A.
EpochMatrix ComputeEpochMatrix(const Matrix& a);
EpochMatrix ComputeEpochMatrix(const DenseQuadratic& model);

// Entrywise formula for A = delta I + (1 - delta) 1 1^T (one-based i, j):
//   C_ij = -(1 - delta) delta^{i-1}               for i < j,
//   C_ij = (1 - delta)(delta^{i-j} - delta^{i-1})  for i >= j.
EpochMatrix ClosedFormEpochMatrix(int n, double delta);

// Epoch map P C P^T of one epoch visiting coordinates in the order of `p`,
// valid when P^T A P = A (so every epoch uses the same C).
Matrix RpcdEpochMap(const EpochMatrix& c, const Permutation& p);

// Epoch map for a general A: P C_P P^T with C_P the epoch matrix of P^T A P.
Matrix RpcdEpochMap(const Matrix& a, const Permutation& p);

// 1/2 trace(G^T A G) for G = maps[k-1] * ... * maps[0]: the expectation of
// f(G x0) over x0 with i.i.d. standard-normal entries.
double ExpectedOverX0(const Matrix& a, std::span<const Matrix> maps);

// 1/2 trace(G^T A G) for a single accumulated map G.
double ExpectedOverX0(const Matrix& a, const Matrix& g);

}  // namespace cdlab

#endif  // CDLAB_CD_ENGINE_H_
