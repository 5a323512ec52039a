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

#include "cdlab/cd_engine.h"

#include <cmath>
#include <numeric>
#include <utility>

#include "cdlab/seeded_rng.h"

namespace cdlab {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  std::vector<char> seen(order_.size(), 0);
  for (int v : order_) {
    if (v < 0 || static_cast<std::size_t>(v) >= order_.size() ||
        seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("Permutation: not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::Identity(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return Permutation(std::move(order));
}

Matrix Permutation::ToMatrix() const {
  const int n = size();
  Matrix p = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) p((*this)[j], j) = 1.0;
  return p;
}

OrderingPolicy ParseOrderingPolicy(std::string_view name) {
  if (name == "ccd" || name == "cyclic") return OrderingPolicy::Cyclic();
  if (name == "rcd") return OrderingPolicy::RandomWithReplacement();
  if (name == "rpcd") return OrderingPolicy::RandomPermutation();
  throw std::invalid_argument("unknown variant: " + std::string(name));
}

std::string_view PolicyName(OrderingPolicy::Kind kind) {
  switch (kind) {
    case OrderingPolicy::Kind::kCyclic: return "ccd";
    case OrderingPolicy::Kind::kRandomWithReplacement: return "rcd";
    case OrderingPolicy::Kind::kRandomPermutation: return "rpcd";
    case OrderingPolicy::Kind::kFixedPermutation: return "fixed";
  }
  return "unknown";
}

Trajectory Run(const QuadraticModel& model, const OrderingPolicy& policy,
               const Vector& x0, const RunOptions& options) {
  const int n = Dimension(model);
  if (x0.size() != n) throw std::invalid_argument("Run: x0 has wrong length");
  if (!(options.tol >= 0.0)) throw std::invalid_argument("Run: tol must be >= 0");
  if (options.max_epochs < 0) {
    throw std::invalid_argument("Run: max_epochs must be >= 0");
  }
  if (policy.kind == OrderingPolicy::Kind::kFixedPermutation &&
      (!policy.fixed || policy.fixed->size() != n)) {
    throw std::invalid_argument("Run: fixed permutation has wrong size");
  }

  SeededRng rng(options.seed);
  SolverState state(model, x0);
  Trajectory traj;

  auto record = [&](double f) {
    if (!std::isfinite(f)) {
      throw NumericalError("Run: objective became nonfinite", f);
    }
    traj.f_per_epoch.push_back(f);
    if (options.record_iterates) traj.iterates.push_back(state.x());
  };

  double f = Objective(model, state.x());
  record(f);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  if (policy.kind == OrderingPolicy::Kind::kFixedPermutation) {
    order = policy.fixed->order();
  }

  for (int epoch = 0; epoch < options.max_epochs && f > options.tol; ++epoch) {
    switch (policy.kind) {
      case OrderingPolicy::Kind::kCyclic:
      case OrderingPolicy::Kind::kFixedPermutation:
        break;
      case OrderingPolicy::Kind::kRandomPermutation:
        std::iota(order.begin(), order.end(), 0);
        rng.Shuffle(order);
        break;
      case OrderingPolicy::Kind::kRandomWithReplacement:
        for (int& i : order) i = static_cast<int>(rng.UniformIndex(n));
        break;
    }
    for (int i : order) state.ExactStep(model, i);
    traj.iterations += n;
    state.Refresh(model);
    if (options.record_orders) traj.orders.push_back(order);
    f = Objective(model, state.x());
    record(f);
  }

  traj.converged = f <= options.tol;
  traj.final_x = state.x();
  return traj;
}

EpochMatrix ComputeEpochMatrix(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  // Solve (L + D) C = -L^T column by column.
  Matrix c(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double rhs = i < j ? -a(j, i) : 0.0;  // (-L^T)_ij = -A_ji for i < j
      for (int k = 0; k < i; ++k) rhs -= a(i, k) * c(k, j);
      c(i, j) = rhs / a(i, i);
    }
  }
  return {std::move(c)};
}

EpochMatrix ComputeEpochMatrix(const DenseQuadratic& model) {
  return ComputeEpochMatrix(model.matrix());
}

EpochMatrix ClosedFormEpochMatrix(int n, double delta) {
  PermInvariantQuadratic validate(n, delta);
  (void)validate;
  // powers[k] = delta^k
  Vector powers(n);
  powers[0] = 1.0;
  for (int k = 1; k < n; ++k) powers[k] = powers[k - 1] * delta;
  const double w = 1.0 - delta;
  Matrix c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      c(i, j) = i < j ? -w * powers[i] : w * (powers[i - j] - powers[i]);
    }
  }
  return {std::move(c)};
}

Matrix RpcdEpochMap(const EpochMatrix& c, const Permutation& p) {
  if (p.size() != c.n()) {
    throw std::invalid_argument("RpcdEpochMap: permutation has wrong size");
  }
  const int n = c.n();
  // (P C P^T)_{order[a], order[b]} = C_ab
  Matrix out(n, n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) out(p[a], p[b]) = c.values(a, b);
  }
  return out;
}

Matrix RpcdEpochMap(const Matrix& a, const Permutation& p) {
  if (p.size() != a.rows()) {
    throw std::invalid_argument("RpcdEpochMap: permutation has wrong size");
  }
  const int n = p.size();
  Matrix permuted(n, n);  // P^T A P
  for (int b = 0; b < n; ++b) {
    for (int r = 0; r < n; ++r) permuted(r, b) = a(p[r], p[b]);
  }
  return RpcdEpochMap(ComputeEpochMatrix(permuted), p);
}

double ExpectedOverX0(const Matrix& a, const Matrix& g) {
  return 0.5 * (g.transpose() * a * g).trace();
}

double ExpectedOverX0(const Matrix& a, std::span<const Matrix> maps) {
  Matrix g = Matrix::Identity(a.rows(), a.cols());
  for (const Matrix& m : maps) {
    if (m.rows() != a.rows() || m.cols() != a.cols()) {
      throw std::invalid_argument("ExpectedOverX0: map has wrong shape");
    }
    g = m * g;
  }
  return ExpectedOverX0(a, g);
}

}  // namespace cdlab
