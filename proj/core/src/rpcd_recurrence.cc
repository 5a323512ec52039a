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

#include "cdlab/rpcd_recurrence.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cdlab {

Matrix SymmetrizedForm::ToMatrix(int n) const {
  Matrix b = Matrix::Constant(n, n, tau2);
  b.diagonal().array() += tau1;
  return b;
}

SymmetrizedForm Symmetrize(const Matrix& q) {
  if (q.rows() != q.cols()) throw std::invalid_argument("Symmetrize: Q not square");
  const auto n = static_cast<double>(q.rows());
  if (q.rows() < 2) throw std::invalid_argument("Symmetrize: n must be >= 2");
  const double trace = q.trace();
  SymmetrizedForm form;
  form.tau2 = (q.sum() - trace) / (n * (n - 1.0));
  form.tau1 = trace / n - form.tau2;
  return form;
}

EpochMatrixScalars ComputeEpochMatrixScalars(const EpochMatrix& c) {
  const Vector row_sums = c.values.rowwise().sum();     // C 1
  const Vector col_sums = c.values.colwise().sum();     // C^T 1
  EpochMatrixScalars s;
  s.one_C_one = col_sums.sum();
  s.norm_C_one_sq = row_sums.squaredNorm();
  s.norm_Ct_one_sq = col_sums.squaredNorm();
  s.frob_sq = c.values.squaredNorm();
  return s;
}

Eigen::Matrix2d RecurrenceMatrix::ToMatrix() const {
  Eigen::Matrix2d m;
  m << d1, m1, d2, m2;
  return m;
}

RecurrenceMatrix RecurrenceFromScalars(const EpochMatrixScalars& s, int n) {
  const double pairs = static_cast<double>(n) * (n - 1.0);
  RecurrenceMatrix m;
  m.d2 = (s.norm_C_one_sq - s.frob_sq) / pairs;
  m.d1 = s.frob_sq / n - m.d2;
  m.m2 = (s.one_C_one * s.one_C_one - s.norm_Ct_one_sq) / pairs;
  m.m1 = s.norm_Ct_one_sq / n - m.m2;
  return m;
}

RecurrenceMatrix RecurrenceCoefficients(int n, double delta) {
  return RecurrenceFromScalars(
      ComputeEpochMatrixScalars(ClosedFormEpochMatrix(n, delta)), n);
}

RecurrenceMatrix AsymptoticCoefficients(int n, double delta) {
  PermInvariantQuadratic validate(n, delta);
  (void)validate;
  const double d = delta;
  RecurrenceMatrix m;
  m.d1 = 1.0 - 2.0 * d - 2.0 * d / n + 2.0 * d * d;
  m.d2 = 1.0 - 2.0 / n - 2.0 * d + 4.0 * d / n + 2.0 * d * d;
  m.m1 = d * d / n;
  m.m2 = 2.0 * d * d * d / (static_cast<double>(n) * n);
  return m;
}

RecurrencePair Evolve(const RecurrenceMatrix& m, double delta, int t) {
  if (t < 0) throw std::invalid_argument("Evolve: t must be >= 0");
  RecurrencePair p{delta, 1.0 - delta, 0};
  for (int k = 0; k < t; ++k) {
    const double eta = m.d1 * p.eta + m.m1 * p.nu;
    const double nu = m.d2 * p.eta + m.m2 * p.nu;
    p.eta = eta;
    p.nu = nu;
  }
  p.t = t;
  return p;
}

namespace {

void AccumulateAbar(const std::vector<Matrix>& maps, const Matrix& a,
                    const Matrix& g, int depth, Matrix& sum) {
  if (depth == 0) {
    sum.noalias() += g.transpose() * a * g;
    return;
  }
  for (const Matrix& m : maps) AccumulateAbar(maps, a, m * g, depth - 1, sum);
}

}  // namespace

Matrix BruteForceAbar(int n, double delta, int t) {
  if (n > 5 || t > 3 || t < 0) {
    throw std::invalid_argument("BruteForceAbar: requires n <= 5 and 0 <= t <= 3");
  }
  const PermInvariantQuadratic model(n, delta);
  const Matrix a = model.Dense();
  const EpochMatrix c = ClosedFormEpochMatrix(n, delta);

  std::vector<Matrix> maps;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  do {
    maps.push_back(RpcdEpochMap(c, Permutation(order)));
  } while (std::next_permutation(order.begin(), order.end()));

  Matrix sum = Matrix::Zero(n, n);
  AccumulateAbar(maps, a, Matrix::Identity(n, n), t, sum);
  double count = 1.0;
  for (int k = 0; k < t; ++k) count *= static_cast<double>(maps.size());
  return sum / count;
}

double ExpectedObjective(int n, double delta, int ell) {
  const RecurrencePair p = Evolve(RecurrenceCoefficients(n, delta), delta, ell);
  return 0.5 * n * (p.eta + p.nu);
}

double ConditionalExpectedObjective(int n, double delta, int ell,
                                    const Vector& x0) {
  if (x0.size() != n) {
    throw std::invalid_argument("ConditionalExpectedObjective: dimension mismatch");
  }
  const RecurrencePair p = Evolve(RecurrenceCoefficients(n, delta), delta, ell);
  const double s = x0.sum();
  return 0.5 * (p.eta * x0.squaredNorm() + p.nu * s * s);
}

double FirstIterationFactor(int n, double delta) {
  if (n < 2) throw std::invalid_argument("FirstIterationFactor: n must be >= 2");
  return (n - 1.0) / n * delta * (2.0 - delta);
}

namespace {

double FirstIterationBracket(double delta) {
  const double w = 1.0 - delta;
  return 0.5 * delta * w * w + 0.5 * delta * delta * w;
}

}  // namespace

double FirstIterationConditional(int n, double delta, const Vector& x0) {
  if (x0.size() != n) {
    throw std::invalid_argument("FirstIterationConditional: dimension mismatch");
  }
  const double ratio = (n - 1.0) / n;
  const double s = x0.sum();
  return 0.5 * delta * ratio * x0.squaredNorm() +
         ratio * s * s * FirstIterationBracket(delta);
}

double FirstIterationGivenCoordinate(double delta, const Vector& x0, int i) {
  if (i < 0 || i >= x0.size()) {
    throw std::invalid_argument("FirstIterationGivenCoordinate: index out of range");
  }
  const double sq = x0.squaredNorm() - x0[i] * x0[i];
  const double s = x0.sum() - x0[i];
  return 0.5 * delta * sq + s * s * FirstIterationBracket(delta);
}

}  // namespace cdlab
