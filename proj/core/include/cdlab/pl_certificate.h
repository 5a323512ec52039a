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

#ifndef CDLAB_PL_CERTIFICATE_H_
#define CDLAB_PL_CERTIFICATE_H_

#include <cstdint>
#include <functional>
#include <optional>

#include "cdlab/quadratic_model.h"

namespace cdlab {

// f(x) = g(E x) with g strongly convex with modulus sigma.
struct ComposedObjective {
  Matrix E;
  double sigma = 1.0;
  std::function<double(const Vector&)> g_eval;
  std::function<Vector(const Vector&)> g_grad;
  double f_star = 0.0;  // min_x g(E x)

  double Value(const Vector& x) const { return g_eval(E * x); }
  Vector Gradient(const Vector& x) const { return E.transpose() * g_grad(E * x); }
};

// Checks that sigma > 0, E is finite and g_grad matches central differences
// of g_eval to 1e-5 relative at a few seeded points. Throws
// std::invalid_argument on failure.
void ValidateComposedObjective(const ComposedObjective& obj,
                               std::uint64_t seed = 0);

// g(t) = 1/2 ||t - target||^2 (sigma = 1); f* = 1/2 ||(I - E E^+) target||^2.
ComposedObjective LeastSquaresObjective(Matrix e, Vector target);

// g(t) = 1/2 ||t||^2 with E = A^{1/2}, so f(x) = 1/2 x^T A x and f* = 0.
ComposedObjective QuadraticAsComposed(const Matrix& a);

struct PLConstant {
  double mu = 0.0;            // sigma * sigma_min_nz^2 / 4
  double sigma_min_nz = 0.0;  // singular values below 1e-10 sigma_max are zero
  bool all_optimal = false;   // E == 0: every x is a minimizer
};

// Constant from Hoffman's lemma: ||grad f||^2 >= (sigma sigma_min_nz^2 / 2)
// (f - f*), i.e. 2 mu (f - f*) with mu = sigma sigma_min_nz^2 / 4.
// Throws std::invalid_argument for a nonfinite E.
PLConstant ComputePLConstant(const ComposedObjective& obj);

double MinNonzeroSingularValue(const Matrix& e);

inline constexpr double kPLTolerance = 1e-10;

struct PLCertificate {
  double mu = 0.0;
  double sigma_min_nz = 0.0;
  int samples_checked = 0;
  // min over samples of ||grad f||^2 - 2 mu (f - f*) + kPLTolerance; the
  // certificate passes iff this is >= 0.
  double worst_slack = 0.0;
  bool passed = false;
  std::optional<Vector> witness;  // first violating point, when failed
};

// Samples points uniformly in the ball of `radius` and tests
// ||grad f(x)||^2 >= 2 mu (f(x) - f*) - 1e-10 at each.
// Throws std::invalid_argument for mu < 0, n_samples < 1 or radius <= 0.
PLCertificate CheckPL(const ComposedObjective& obj, double mu, int n_samples,
                      double radius, std::uint64_t seed);

}  // namespace cdlab

#endif  // CDLAB_PL_CERTIFICATE_H_
