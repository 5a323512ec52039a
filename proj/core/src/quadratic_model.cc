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

#include "cdlab/quadratic_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "cdlab/seeded_rng.h"

namespace cdlab {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckLength(const QuadraticModel& model, const Vector& x) {
  if (x.size() != Dimension(model)) {
    throw std::invalid_argument("dimension mismatch: model has n = " +
                                std::to_string(Dimension(model)) +
                                ", vector has length " +
                                std::to_string(x.size()));
  }
}

}  // namespace

PermInvariantQuadratic::PermInvariantQuadratic(int n, double delta)
    : n_(n), delta_(delta) {
  if (n < 2) throw std::invalid_argument("PermInvariantQuadratic: n must be >= 2");
  const double upper = static_cast<double>(n) / (n - 1);
  if (!(delta > 0.0 && delta < upper)) {
    throw std::invalid_argument(
        "PermInvariantQuadratic: delta must lie in (0, n/(n-1))");
  }
}

Matrix PermInvariantQuadratic::Dense() const {
  Matrix a = Matrix::Constant(n_, n_, 1.0 - delta_);
  a.diagonal().setOnes();
  return a;
}

DenseQuadratic::DenseQuadratic(Matrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() < 1) {
    throw std::invalid_argument("DenseQuadratic: matrix must be square");
  }
  if (!a_.allFinite()) {
    throw std::invalid_argument("DenseQuadratic: nonfinite entries");
  }
  if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("DenseQuadratic: matrix is not symmetric");
  }
  if ((a_.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("DenseQuadratic: diagonal must be all ones");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument(
        "DenseQuadratic: matrix is not positive semidefinite");
  }
}

int Dimension(const QuadraticModel& model) {
  return std::visit([](const auto& m) { return m.n(); }, model);
}

Matrix Hessian(const QuadraticModel& model) {
  return std::visit(Overloaded{
                        [](const PermInvariantQuadratic& m) { return m.Dense(); },
                        [](const DenseQuadratic& m) { return m.matrix(); },
                    },
                    model);
}

double Objective(const QuadraticModel& model, const Vector& x) {
  CheckLength(model, x);
  return std::visit(
      Overloaded{
          [&](const PermInvariantQuadratic& m) {
            const double s = x.sum();
            return 0.5 * m.delta() * x.squaredNorm() +
                   0.5 * (1.0 - m.delta()) * s * s;
          },
          [&](const DenseQuadratic& m) {
            return 0.5 * x.dot(m.matrix() * x);
          },
      },
      model);
}

SolverState::SolverState(const QuadraticModel& model, Vector x)
    : x_(std::move(x)) {
  CheckLength(model, x_);
  Refresh(model);
}

void SolverState::Refresh(const QuadraticModel& model) {
  std::visit(Overloaded{
                 [&](const PermInvariantQuadratic&) { sum_ = x_.sum(); },
                 [&](const DenseQuadratic& m) {
                   residual_.noalias() = m.matrix() * x_;
                 },
             },
             model);
}

double CoordinateGradient(const QuadraticModel& model, const SolverState& state,
                          int i) {
  if (i < 0 || i >= state.x_.size()) {
    throw std::invalid_argument("coordinate index " + std::to_string(i) +
                                " out of range");
  }
  return std::visit(
      Overloaded{
          [&](const PermInvariantQuadratic& m) {
            return m.delta() * state.x_[i] + (1.0 - m.delta()) * state.sum_;
          },
          [&](const DenseQuadratic&) { return state.residual_[i]; },
      },
      model);
}

double SolverState::ExactStep(const QuadraticModel& model, int i) {
  const double g = CoordinateGradient(model, *this, i);
  x_[i] -= g;
  std::visit(Overloaded{
                 [&](const PermInvariantQuadratic&) { sum_ -= g; },
                 [&](const DenseQuadratic& m) {
                   residual_.noalias() -= g * m.matrix().col(i);
                 },
             },
             model);
  return g;
}

QuadraticConstants ComputeQuadraticConstants(const QuadraticModel& model) {
  return std::visit(
      Overloaded{
          [](const PermInvariantQuadratic& m) {
            QuadraticConstants c;
            // Eigenvalues: n(1 - delta) + delta (along 1) and delta.
            const double along_ones = m.n() * (1.0 - m.delta()) + m.delta();
            c.L = std::max(along_ones, m.delta());
            c.Lmax = c.Lmin = c.Lavg = 1.0;
            c.mu = std::min(along_ones, m.delta());
            return c;
          },
          [](const DenseQuadratic& m) {
            const Matrix& a = m.matrix();
            QuadraticConstants c;
            c.Lmax = a.diagonal().maxCoeff();
            c.Lmin = a.diagonal().minCoeff();
            c.Lavg = a.diagonal().mean();
            Eigen::SelfAdjointEigenSolver<Matrix> solver(a,
                                                         Eigen::EigenvaluesOnly);
            const Vector& eig = solver.eigenvalues();
            c.L = std::max(std::abs(eig.minCoeff()), eig.maxCoeff());
            const double cutoff = 1e-10 * c.L;
            c.mu = 0.0;
            for (int k = 0; k < eig.size(); ++k) {
              if (eig[k] > cutoff) {
                c.mu = eig[k];  // ascending order: first one above the cutoff
                break;
              }
            }
            return c;
          },
      },
      model);
}

Matrix LogUniformSpectrumMatrix(int n, double condition, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("log-uniform spectrum: n must be >= 2");
  if (!(condition > 1.0)) {
    throw std::invalid_argument("log-uniform spectrum: condition must exceed 1");
  }
  SeededRng rng(seed);
  const double log_kappa = std::log(condition);
  Vector lambda(n);
  lambda[0] = 1.0;
  lambda[n - 1] = condition;
  for (int i = 1; i < n - 1; ++i) {
    lambda[i] = std::exp(log_kappa * rng.UniformUnit());
  }

  Matrix sample(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) sample(i, j) = rng.Normal();
  }
  Eigen::HouseholderQR<Matrix> qr(sample);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  Matrix a = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

Matrix UnitDiagonalRescale(const Matrix& a) {
  const Vector inv_sqrt = a.diagonal().cwiseSqrt().cwiseInverse();
  Matrix scaled = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
  scaled = 0.5 * (scaled + scaled.transpose());
  scaled.diagonal().setOnes();
  return scaled;
}

DenseQuadratic BuildLogUniformSpectrum(int n, double condition,
                                       std::uint64_t seed) {
  return DenseQuadratic(
      UnitDiagonalRescale(LogUniformSpectrumMatrix(n, condition, seed)));
}

}  // namespace cdlab
