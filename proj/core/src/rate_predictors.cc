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

#include "cdlab/rate_predictors.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace cdlab {

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kCCD: return "CCD";
    case Variant::kRCD: return "RCD";
    case Variant::kRPCD: return "RPCD";
    case Variant::kSD: return "SD";
  }
  return "unknown";
}

double SpectralRadius(const Matrix& t, double tol, int max_squarings) {
  if (t.rows() != t.cols()) throw std::invalid_argument("SpectralRadius: not square");
  if (!t.allFinite()) throw std::invalid_argument("SpectralRadius: nonfinite entries");
  if (!(tol > 0.0)) throw std::invalid_argument("SpectralRadius: tol must be > 0");
  if (max_squarings < 1) {
    throw std::invalid_argument("SpectralRadius: max_squarings must be >= 1");
  }

  // Invariant: T^(2^k) = exp(2^k * log_scale) * s, so the estimate is
  // exp(log_scale + log||s|| / 2^k).
  double norm = t.norm();
  if (norm == 0.0) return 0.0;
  Matrix s = t / norm;
  double log_scale = std::log(norm);
  double power = 1.0;  // 2^k
  double previous = std::exp(log_scale);

  for (int k = 1; k <= max_squarings; ++k) {
    Matrix squared = s * s;
    power *= 2.0;
    norm = squared.norm();
    if (norm == 0.0) return 0.0;  // nilpotent
    s = squared / norm;
    log_scale += std::log(norm) / power;
    const double estimate = std::exp(log_scale);
    if (std::abs(estimate - previous) <= tol * estimate) return estimate;
    previous = estimate;
  }
  throw NumericalError("SpectralRadius: no convergence within " +
                           std::to_string(max_squarings) + " squarings",
                       previous);
}

double RhoCSquared(int n, double delta) {
  const double rho = SpectralRadius(ClosedFormEpochMatrix(n, delta).values);
  return rho * rho;
}

double RhoM(const RecurrenceMatrix& m) {
  const double trace = m.d1 + m.m2;
  const double det = m.d1 * m.m2 - m.d2 * m.m1;
  const std::complex<double> root =
      std::sqrt(std::complex<double>(trace * trace - 4.0 * det, 0.0));
  const std::complex<double> a = 0.5 * (trace + root);
  const std::complex<double> b = 0.5 * (trace - root);
  return std::max(std::abs(a), std::abs(b));
}

double RhoM(int n, double delta) { return RhoM(RecurrenceCoefficients(n, delta)); }

double RpcdAsymptoticRate(int n, double delta) {
  return 1.0 - 2.0 * delta - 2.0 * delta / n + 2.0 * delta * delta;
}

namespace {

// Sun-Ye terms with Lmin, Lavg, mu, L given.
void SunYeTerms(double mu, double L, double Lmin, double Lavg, int n,
                double out[3]) {
  const double log_term = 2.0 + std::log(static_cast<double>(n)) / std::numbers::pi;
  out[0] = mu * Lmin / (n * L * Lavg);
  out[1] = mu * Lmin / (L * L * log_term * log_term);
  out[2] = mu * Lmin / (static_cast<double>(n) * n * Lavg * Lavg);
}

}  // namespace

CcdBounds ComputeCcdBounds(int n, double delta) {
  const double big_l = n * (1.0 - delta) + delta;
  CcdBounds b;
  if (delta <= 0.75) {
    b.upper = 1.0 - delta / (n * big_l);
  } else {
    double terms[3];
    SunYeTerms(delta, big_l, 1.0, 1.0, n, terms);
    b.upper = 1.0 - *std::max_element(terms, terms + 3);
  }
  const double inner = 1.0 - 2.0 * delta * std::numbers::pi * std::numbers::pi /
                                 (n * big_l);
  b.lower = inner * inner;
  return b;
}

RcdRates ComputeRcdRates(int n, double delta) {
  RcdRates r;
  r.q_epoch = std::pow(1.0 - delta / n, n);
  r.r_epoch = std::pow(1.0 - 2.0 * delta / (n * (1.0 + delta)), n);
  return r;
}

GenericBounds ComputeGenericBounds(const QuadraticConstants& c, int n,
                                   double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0 / c.Lmax)) {
    throw std::invalid_argument("ComputeGenericBounds: need 0 < alpha <= 1/Lmax");
  }
  GenericBounds g;
  g.beck_tetruashvili =
      1.0 - c.mu / ((2.0 / alpha) * (1.0 + n * c.L * c.L * alpha * alpha));
  SunYeTerms(c.mu, c.L, c.Lmin, c.Lavg, n, g.sun_ye_terms);
  g.sun_ye = 1.0 - *std::max_element(g.sun_ye_terms, g.sun_ye_terms + 3);
  return g;
}

double SdRate(const QuadraticConstants& c) { return 1.0 - c.mu / c.L; }

double EmpiricalRate(const Trajectory& traj, int window) {
  if (window < 1) throw EstimationError("EmpiricalRate: window must be >= 1");
  const auto& f = traj.f_per_epoch;
  if (f.size() < static_cast<std::size_t>(window) + 1) {
    throw EstimationError("EmpiricalRate: trajectory has " +
                          std::to_string(f.size()) +
                          " recorded epochs, need window + 1");
  }
  const std::size_t last = f.size() - 1;
  for (std::size_t k = last - static_cast<std::size_t>(window); k <= last; ++k) {
    if (!(f[k] > 0.0)) {
      throw EstimationError("EmpiricalRate: nonpositive objective in window");
    }
  }
  const double ratio = f[last] / f[last - static_cast<std::size_t>(window)];
  return std::pow(ratio, 1.0 / window);
}

OneStepExample RcdOneStepExample(int n, double delta) {
  if (n % 2 != 0) throw std::invalid_argument("RcdOneStepExample: n must be even");
  return {0.5 * delta * n, 0.5 * delta * (n - delta)};
}

}  // namespace cdlab
