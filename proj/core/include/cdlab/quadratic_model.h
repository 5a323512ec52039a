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

#ifndef CDLAB_QUADRATIC_MODEL_H_
#define CDLAB_QUADRATIC_MODEL_H_

#include <cstdint>
#include <variant>

#include <Eigen/Core>

namespace cdlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// f(x) = 1/2 x^T A x with A = delta I + (1 - delta) 1 1^T.
//
// A is positive definite exactly when 0 < delta < n / (n - 1). Its
// eigenvalues are delta + n (1 - delta) (eigenvector 1) and delta with
// multiplicity n - 1, and P^T A P = A for every permutation matrix P.
class PermInvariantQuadratic {
 public:
  // Throws std::invalid_argument if n < 2 or delta is outside the window.
  PermInvariantQuadratic(int n, double delta);

  int n() const { return n_; }
  double delta() const { return delta_; }

  // Dense rendering of A.
  Matrix Dense() const;

 private:
  int n_;
  double delta_;
};

// f(x) = 1/2 x^T A x for a dense symmetric positive semidefinite A with
// unit diagonal. Validation: symmetry within 1e-12 entrywise, |A_ii - 1|
// within 1e-12, smallest eigenvalue >= -1e-10.
class DenseQuadratic {
 public:
  explicit DenseQuadratic(Matrix a);

  int n() const { return static_cast<int>(a_.rows()); }
  const Matrix& matrix() const { return a_; }

 private:
  Matrix a_;
};

using QuadraticModel = std::variant<PermInvariantQuadratic, DenseQuadratic>;

int Dimension(const QuadraticModel& model);
Matrix Hessian(const QuadraticModel& model);

// O(n) for the permutation-invariant model, O(n^2) otherwise.
double Objective(const QuadraticModel& model, const Vector& x);

// Iterate plus the auxiliary quantity that makes a coordinate gradient cheap:
// the running sum 1^T x for PermInvariantQuadratic, the product A x for
// DenseQuadratic. Confined to one run.
class SolverState {
 public:
  SolverState(const QuadraticModel& model, Vector x);

  const Vector& x() const { return x_; }
  double coordinate_sum() const { return sum_; }
  const Vector& residual() const { return residual_; }

  // Exact line search along coordinate i (A_ii = 1): x_i -= (A x)_i.
  // Returns the step taken.
  double ExactStep(const QuadraticModel& model, int i);

  // Recomputes the auxiliary quantity from x, discarding accumulated drift.
  void Refresh(const QuadraticModel& model);

 private:
  friend double CoordinateGradient(const QuadraticModel&, const SolverState&,
                                   int);
  Vector x_;
  double sum_ = 0.0;
  Vector residual_;
};

// (A x)_i; O(1) for the permutation-invariant model as delta x_i + (1-delta) s.
// Index is zero-based; throws std::invalid_argument when out of range.
double CoordinateGradient(const QuadraticModel& model, const SolverState& state,
                          int i);

struct QuadraticConstants {
  double L = 0.0;     // ||A||_2
  double Lmax = 0.0;  // max_i A_ii
  double Lmin = 0.0;  // min_i A_ii
  double Lavg = 0.0;  // mean of A_ii
  double mu = 0.0;    // smallest nonzero eigenvalue
};

// Exact for the permutation-invariant model: L = n (1 - delta) + delta,
// Lmin = Lavg = Lmax = 1, mu = delta. Uses a symmetric eigensolver for dense
// models; eigenvalues below 1e-10 * L count as zero.
QuadraticConstants ComputeQuadraticConstants(const QuadraticModel& model);

// Q diag(lambda) Q^T with lambda_1 = 1, lambda_n = condition and the
// remaining eigenvalues log-uniform in between; Q is the orthogonal factor of
// a QR decomposition of a standard-normal n x n sample, with column signs
// fixed so that diag(R) > 0. Not yet unit-diagonal.
Matrix LogUniformSpectrumMatrix(int n, double condition, std::uint64_t seed);

// D^{-1/2} A D^{-1/2} with D = diag(A); the diagonal is set to exactly 1.
Matrix UnitDiagonalRescale(const Matrix& a);

// UnitDiagonalRescale(LogUniformSpectrumMatrix(...)). Throws
// std::invalid_argument for condition <= 1 or n < 2.
DenseQuadratic BuildLogUniformSpectrum(int n, double condition,
                                       std::uint64_t seed);

}  // namespace cdlab

#endif  // CDLAB_QUADRATIC_MODEL_H_
