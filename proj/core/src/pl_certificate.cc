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

#include "cdlab/pl_certificate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "cdlab/seeded_rng.h"

namespace cdlab {
namespace {

Vector UniformInBall(SeededRng& rng, int n, double radius) {
  Vector direction = rng.NormalVector(n);
  while (direction.norm() == 0.0) direction = rng.NormalVector(n);
  direction.normalize();
  return radius * std::pow(rng.UniformUnit(), 1.0 / n) * direction;
}

}  // namespace

void ValidateComposedObjective(const ComposedObjective& obj, std::uint64_t seed) {
  if (!(obj.sigma > 0.0)) throw std::invalid_argument("ComposedObjective: sigma must be > 0");
  if (!obj.E.allFinite()) throw std::invalid_argument("ComposedObjective: nonfinite E");
  if (!obj.g_eval || !obj.g_grad) {
    throw std::invalid_argument("ComposedObjective: missing g handles");
  }
  const int m = static_cast<int>(obj.E.rows());
  SeededRng rng(seed);
  for (int trial = 0; trial < 3; ++trial) {
    const Vector t = rng.NormalVector(m);
    const Vector grad = obj.g_grad(t);
    for (int k = 0; k < m; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(t[k]));
      Vector plus = t, minus = t;
      plus[k] += h;
      minus[k] -= h;
      const double fd = (obj.g_eval(plus) - obj.g_eval(minus)) / (2.0 * h);
      if (std::abs(fd - grad[k]) > 1e-5 * std::max(1.0, std::abs(grad[k]))) {
        throw std::invalid_argument(
            "ComposedObjective: g_grad inconsistent with g_eval");
      }
    }
  }
}

ComposedObjective LeastSquaresObjective(Matrix e, Vector target) {
  if (target.size() != e.rows()) {
    throw std::invalid_argument("LeastSquaresObjective: target has wrong length");
  }
  ComposedObjective obj;
  obj.sigma = 1.0;
  obj.g_eval = [target](const Vector& t) { return 0.5 * (t - target).squaredNorm(); };
  obj.g_grad = [target](const Vector& t) -> Vector { return t - target; };
  if (e.size() == 0 || e.isZero(0.0)) {
    obj.f_star = 0.5 * target.squaredNorm();
  } else {
    Eigen::BDCSVD<Matrix> svd(e, Eigen::ComputeThinU);
    const double cutoff = 1e-10 * svd.singularValues()[0];
    int rank = 0;
    while (rank < svd.singularValues().size() && svd.singularValues()[rank] > cutoff) {
      ++rank;
    }
    const Matrix u = svd.matrixU().leftCols(rank);
    const Vector residual = target - u * (u.transpose() * target);
    obj.f_star = 0.5 * residual.squaredNorm();
  }
  obj.E = std::move(e);
  return obj;
}

ComposedObjective QuadraticAsComposed(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  // Eigenvalues at round-off level become exact zeros so that the square
  // root does not turn them into spurious singular values.
  const Vector& eig = solver.eigenvalues();
  const double cutoff = 1e-10 * eig.cwiseAbs().maxCoeff();
  const Vector roots =
      eig.unaryExpr([cutoff](double v) { return v > cutoff ? std::sqrt(v) : 0.0; });
  ComposedObjective obj;
  obj.E = solver.eigenvectors() * roots.asDiagonal() *
          solver.eigenvectors().transpose();
  obj.sigma = 1.0;
  obj.g_eval = [](const Vector& t) { return 0.5 * t.squaredNorm(); };
  obj.g_grad = [](const Vector& t) -> Vector { return t; };
  obj.f_star = 0.0;
  return obj;
}

double MinNonzeroSingularValue(const Matrix& e) {
  if (e.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(e);
  const Vector& sv = svd.singularValues();  // descending
  if (sv.size() == 0 || sv[0] == 0.0) return 0.0;
  const double cutoff = 1e-10 * sv[0];
  double smallest = sv[0];
  for (int k = 0; k < sv.size(); ++k) {
    if (sv[k] > cutoff) smallest = sv[k];
  }
  return smallest;
}

PLConstant ComputePLConstant(const ComposedObjective& obj) {
  if (!obj.E.allFinite()) throw std::invalid_argument("ComputePLConstant: nonfinite E");
  PLConstant out;
  if (obj.E.size() == 0 || obj.E.isZero(0.0)) {
    out.all_optimal = true;
    return out;
  }
  out.sigma_min_nz = MinNonzeroSingularValue(obj.E);
  out.mu = obj.sigma * out.sigma_min_nz * out.sigma_min_nz / 4.0;
  return out;
}

PLCertificate CheckPL(const ComposedObjective& obj, double mu, int n_samples,
                      double radius, std::uint64_t seed) {
  if (!(mu >= 0.0)) throw std::invalid_argument("CheckPL: mu must be >= 0");
  if (n_samples < 1) throw std::invalid_argument("CheckPL: n_samples must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("CheckPL: radius must be > 0");

  PLCertificate cert;
  cert.mu = mu;
  cert.sigma_min_nz = MinNonzeroSingularValue(obj.E);
  cert.worst_slack = std::numeric_limits<double>::infinity();
  cert.passed = true;

  const int n = static_cast<int>(obj.E.cols());
  SeededRng rng(seed);
  for (int k = 0; k < n_samples; ++k) {
    const Vector x = UniformInBall(rng, n, radius);
    const double gap = obj.Value(x) - obj.f_star;
    const double slack =
        obj.Gradient(x).squaredNorm() - 2.0 * mu * gap + kPLTolerance;
    ++cert.samples_checked;
    cert.worst_slack = std::min(cert.worst_slack, slack);
    if (slack < 0.0) {
      cert.passed = false;
      cert.witness = x;
      break;
    }
  }
  return cert;
}

}  // namespace cdlab
