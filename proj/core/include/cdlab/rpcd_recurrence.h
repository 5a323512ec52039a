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

#ifndef CDLAB_RPCD_RECURRENCE_H_
#define CDLAB_RPCD_RECURRENCE_H_

#include <Eigen/Core>

#include "cdlab/cd_engine.h"
#include "cdlab/quadratic_model.h"

namespace cdlab {

// tau1 I + tau2 1 1^T.
struct SymmetrizedForm {
  double tau1 = 0.0;
  double tau2 = 0.0;

  Matrix ToMatrix(int n) const;
};

// E_P[P Q P^T] over uniformly random permutation matrices P:
//   tau2 = (1^T Q 1 - trace Q) / (n (n - 1)),  tau1 = trace Q / n - tau2.
// Throws std::invalid_argument for non-square Q or n < 2.
SymmetrizedForm Symmetrize(const Matrix& q);

struct EpochMatrixScalars {
  double one_C_one = 0.0;       // 1^T C 1
  double norm_C_one_sq = 0.0;   // ||C 1||^2
  double norm_Ct_one_sq = 0.0;  // ||C^T 1||^2
  double frob_sq = 0.0;         // ||C||_F^2
};

EpochMatrixScalars ComputeEpochMatrixScalars(const EpochMatrix& c);

// Coefficients of the 2x2 map (eta, nu) -> M (eta, nu) with
// M = [[d1, m1], [d2, m2]].
struct RecurrenceMatrix {
  double d1 = 0.0;
  double d2 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;

  Eigen::Matrix2d ToMatrix() const;
};

// d2 = (||C1||^2 - ||C||_F^2) / (n(n-1)),  d1 = ||C||_F^2 / n - d2,
// m2 = ((1^T C 1)^2 - ||C^T 1||^2) / (n(n-1)),  m1 = ||C^T 1||^2 / n - m2.
RecurrenceMatrix RecurrenceFromScalars(const EpochMatrixScalars& s, int n);

// Exact coefficients, evaluated numerically from the closed-form C.
RecurrenceMatrix RecurrenceCoefficients(int n, double delta);

// Leading-order small-delta forms:
//   d1 = 1 - 2d - 2d/n + 2d^2,  d2 = 1 - 2/n - 2d + 4d/n + 2d^2,
//   m1 = d^2 / n,               m2 = 2 d^3 / n^2.
RecurrenceMatrix AsymptoticCoefficients(int n, double delta);

struct RecurrencePair {
  double eta = 0.0;
  double nu = 0.0;
  int t = 0;
};

// (eta_t, nu_t) = M^t (delta, 1 - delta) by repeated 2x2 application.
// Throws std::invalid_argument for t < 0.
RecurrencePair Evolve(const RecurrenceMatrix& m, double delta, int t);

// Average of G^T A G over every tuple (P_1, ..., P_t) of permutations, with
// G = P_t C P_t^T ... P_1 C P_1^T: (n!)^t terms enumerated explicitly.
// Guarded to n <= 5 and t <= 3 (std::invalid_argument otherwise).
Matrix BruteForceAbar(int n, double delta, int t);

// E over permutations and x0 ~ N(0, I) of f(x^{ln}): n (eta_l + nu_l) / 2.
double ExpectedObjective(int n, double delta, int ell);

// E over permutations of f(x^{ln}) given x0:
// (eta_l ||x0||^2 + nu_l (1^T x0)^2) / 2.
double ConditionalExpectedObjective(int n, double delta, int ell,
                                    const Vector& x0);

// Factor ((n-1)/n) delta (2 - delta) with E f(x^1) = factor * E f(x^0) for a
// uniformly random first coordinate and Gaussian x0.
double FirstIterationFactor(int n, double delta);

// Displayed closed form of E_i f(x^1) for a fixed x0:
// 1/2 delta (n-1)/n ||x0||^2 + ((n-1)/n) (1^T x0)^2 [1/2 delta (1-delta)^2
// + 1/2 delta^2 (1-delta)].
double FirstIterationConditional(int n, double delta, const Vector& x0);

// f(x^1) after updating coordinate i (zero-based) from x0, using sums that
// exclude i: 1/2 delta sum_{j!=i} x_j^2 + (sum_{j!=i} x_j)^2 [...].
double FirstIterationGivenCoordinate(double delta, const Vector& x0, int i);

}  // namespace cdlab

#endif  // CDLAB_RPCD_RECURRENCE_H_
