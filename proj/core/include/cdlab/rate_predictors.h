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

#ifndef CDLAB_RATE_PREDICTORS_H_
#define CDLAB_RATE_PREDICTORS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cdlab/cd_engine.h"
#include "cdlab/quadratic_model.h"
#include "cdlab/rpcd_recurrence.h"

namespace cdlab {

// Raised when a trajectory cannot support a rate estimate.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Variant { kCCD, kRCD, kRPCD, kSD };
std::string_view VariantName(Variant v);

struct RateReport {
  Variant variant = Variant::kCCD;
  std::optional<double> empirical;
  std::optional<double> empirical_std;
  int replicates = 0;
  double predicted = 0.0;
  std::optional<double> upper_bound;
  std::optional<double> lower_bound;
  int n = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  int epochs = 0;
};

// Spectral radius by Gelfand's formula with repeated squaring:
// estimate_k = ||T^(2^k)||_F^(1/2^k), renormalizing after every squaring.
// Stops when successive estimates agree to `tol` relatively; after
// `max_squarings` squarings throws NumericalError carrying the last estimate.
double SpectralRadius(const Matrix& t, double tol = 1e-12, int max_squarings = 60);

// rho(C)^2 for the closed-form epoch matrix.
double RhoCSquared(int n, double delta);

// Largest modulus root of lambda^2 - (d1 + m2) lambda + (d1 m2 - d2 m1).
double RhoM(const RecurrenceMatrix& m);
double RhoM(int n, double delta);

// 1 - 2 delta - 2 delta / n + 2 delta^2.
double RpcdAsymptoticRate(int n, double delta);

struct CcdBounds {
  double upper = 1.0;
  double lower = 0.0;
};

// For delta <= 3/4: upper = 1 - delta / (n (n (1 - delta) + delta)); above
// that, the three-term Sun-Ye maximum with L = n (1 - delta) + delta,
// Lmin = Lavg = 1, mu = delta. lower = (1 - 2 delta pi^2 / (n L))^2.
CcdBounds ComputeCcdBounds(int n, double delta);

struct RcdRates {
  double q_epoch = 1.0;  // (1 - delta / n)^n
  double r_epoch = 1.0;  // (1 - 2 delta / (n (1 + delta)))^n
};
RcdRates ComputeRcdRates(int n, double delta);

struct GenericBounds {
  double beck_tetruashvili = 1.0;
  double sun_ye = 1.0;
  double sun_ye_terms[3] = {0.0, 0.0, 0.0};
};

// Beck-Tetruashvili 1 - mu / ((2 / alpha)(1 + n L^2 alpha^2)) for a constant
// step alpha, and the Sun-Ye exact-line-search bound
// 1 - max{mu Lmin/(n L Lavg), mu Lmin/(L^2 (2 + log n / pi)^2),
//         mu Lmin/(n^2 Lavg^2)}.
// Throws std::invalid_argument unless 0 < alpha <= 1 / Lmax.
GenericBounds ComputeGenericBounds(const QuadraticConstants& consts, int n,
                                   double alpha);

// Steepest descent: 1 - mu / L.
double SdRate(const QuadraticConstants& consts);

// (f_L / f_{L-window})^(1/window) with L the last recorded epoch.
// Throws EstimationError if fewer than window + 1 values exist or any value
// in the window is not strictly positive.
double EmpiricalRate(const Trajectory& traj, int window = 10);

struct OneStepExample {
  double f0 = 0.0;
  double f1 = 0.0;
};

// f and f+ one exact step from x_i = (-1)^i: (delta n / 2, delta (n - delta) / 2).
// Throws std::invalid_argument for odd n.
OneStepExample RcdOneStepExample(int n, double delta);

}  // namespace cdlab

#endif  // CDLAB_RATE_PREDICTORS_H_
