// Copyright 2026 The zetadisc Authors
//
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "zetadisc/error.hpp"

namespace zetadisc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Dense complex matrix with Hermitian symmetry checked at construction.
///
/// Entries may deviate from exact conjugate symmetry by at most
/// `rel_tol * max|entry|`; the stored matrix is then symmetrized so that
/// downstream code can rely on exact Hermiticity.
class HermitianOperator {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  explicit HermitianOperator(CMatrix entries,
                             double rel_tol = kDefaultTolerance)
      : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "operator must be square, got " +
                      std::to_string(entries_.rows()) + "x" +
                      std::to_string(entries_.cols()));
    }
    if (entries_.rows() < 1) {
      throw Error(ErrorKind::DimensionMismatch, "operator dimension must be >= 1");
    }
    max_abs_ = zetadisc::max_abs(entries_);
    const double bound = rel_tol * max_abs_;
    const Index n = entries_.rows();
    for (Index k = 0; k < n; ++k) {
      for (Index j = k; j < n; ++j) {
        const double dev = std::abs(entries_(j, k) - std::conj(entries_(k, j)));
        if (!(dev <= bound)) {
          throw Error(ErrorKind::NonHermitianInput,
                      "entry (" + std::to_string(j) + "," + std::to_string(k) +
                          ") deviates from conjugate symmetry by " +
                          std::to_string(dev));
        }
      }
    }
    for (Index k = 0; k < n; ++k) {
      entries_(k, k) = entries_(k, k).real();
      for (Index j = k + 1; j < n; ++j) {
        const Complex avg = 0.5 * (entries_(j, k) + std::conj(entries_(k, j)));
        entries_(j, k) = avg;
        entries_(k, j) = std::conj(avg);
      }
    }
  }

  Index dim() const noexcept { return entries_.rows(); }
  const CMatrix& matrix() const noexcept { return entries_; }
  double max_abs() const noexcept { return max_abs_; }
  Complex operator()(Index j, Index k) const { return entries_(j, k); }

 private:
  CMatrix entries_;
  double max_abs_ = 0.0;
};

/// Rotates `v` so that its largest-magnitude component is real and positive.
/// Ties go to the lowest index.
inline void fix_phase(Eigen::Ref<CVector> v) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

/// Ascending eigenvalues with the matching unitary eigenvector matrix.
struct EigenSystem {
  RVector eigenvalues;
  CMatrix vectors;

  Index dim() const noexcept { return eigenvalues.size(); }

  CMatrix reconstruct() const {
    return vectors * eigenvalues.cast<Complex>().asDiagonal() * vectors.adjoint();
  }
};

inline EigenSystem eig_hermitian(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure,
                "dense Hermitian eigensolver did not converge (dim " +
                    std::to_string(m.dim()) + ")");
  }
  EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
  for (Index k = 0; k < out.vectors.cols(); ++k) fix_phase(out.vectors.col(k));
  return out;
}

struct Eigenpair {
  double value = 0.0;
  CVector vector;
  double residual = 0.0;
  int iterations = 0;
};

struct DavidsonOptions {
  Index max_subspace = 96;
  int max_iterations = 5000;
  std::uint64_t seed = 0x5eed5eedULL;
};

/// Lowest eigenpair by a Jacobi-preconditioned Davidson iteration with full
/// reorthogonalization. Converged when ||Mv - lambda v|| <= tol * max|M_jk|.
inline Eigenpair smallest_eigenpair(const HermitianOperator& m, double tol,
                                    const DavidsonOptions& opts = {}) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  const CMatrix& a = m.matrix();
  const Index n = m.dim();
  const double scale = std::max(m.max_abs(), std::numeric_limits<double>::min());
  const double target = tol * scale;
  const RVector diag = a.diagonal().real();

  if (n == 1) {
    return Eigenpair{diag(0), CVector::Ones(1), 0.0, 0};
  }

  const Index max_sub = std::max<Index>(2, std::min(n, opts.max_subspace));
  CMatrix basis(n, max_sub);
  CMatrix image(n, max_sub);
  Index k = 0;

  auto orthonormalize_and_push = [&](CVector t) -> bool {
    const double norm0 = t.norm();
    if (norm0 == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
      if (k > 0) t -= basis.leftCols(k) * (basis.leftCols(k).adjoint() * t);
    }
    const double norm1 = t.norm();
    if (norm1 <= 1e-10 * norm0) return false;
    basis.col(k) = t / norm1;
    image.col(k).noalias() = a * basis.col(k);
    ++k;
    return true;
  };

  // Start on the smallest diagonal entry with a small deterministic spread so
  // that no invariant block of M is missed.
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  CVector start(n);
  for (Index i = 0; i < n; ++i) start(i) = Complex(gauss(rng), gauss(rng));
  start *= 1e-2 / start.norm();
  Index i_min = 0;
  diag.minCoeff(&i_min);
  start(i_min) += 1.0;
  orthonormalize_and_push(start);

  Eigenpair out;
  CVector ritz(n), ritz_prev = CVector::Zero(n), residual(n);
  double theta = 0.0;
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    const CMatrix small = basis.leftCols(k).adjoint() * image.leftCols(k);
    Eigen::SelfAdjointEigenSolver<CMatrix> sub(0.5 * (small + small.adjoint()));
    theta = sub.eigenvalues()(0);
    const CVector y = sub.eigenvectors().col(0);
    ritz.noalias() = basis.leftCols(k) * y;
    residual.noalias() = image.leftCols(k) * y;
    residual -= theta * ritz;
    const double rnorm = residual.norm();
    out.iterations = iter;
    out.residual = rnorm;
    if (rnorm <= target) break;
    if (iter == opts.max_iterations) {
      throw Error(ErrorKind::ConvergenceFailure,
                  "Davidson iteration cap reached with residual " +
                      std::to_string(rnorm) + " (target " + std::to_string(target) + ")");
    }
    if (k == n) {
      // Full space spanned: the Ritz pair is exact up to rounding.
      if (rnorm <= 1e3 * std::numeric_limits<double>::epsilon() * scale * std::sqrt(double(n))) break;
      throw Error(ErrorKind::ConvergenceFailure,
                  "subspace exhausted with residual " + std::to_string(rnorm));
    }
    if (k == max_sub) {
      // Restart on the current and previous Ritz vectors.
      const CVector keep_prev = ritz_prev;
      k = 0;
      orthonormalize_and_push(ritz);
      orthonormalize_and_push(keep_prev);
    }
    CVector t(n);
    const double floor = 1e-10 * scale;
    for (Index i = 0; i < n; ++i) {
      double d = diag(i) - theta;
      if (std::abs(d) < floor) d = d < 0.0 ? -floor : floor;
      t(i) = residual(i) / d;
    }
    if (!orthonormalize_and_push(std::move(t)) && !orthonormalize_and_push(residual)) {
      break;
    }
    ritz_prev = ritz;
  }
  out.value = theta;
  out.vector = ritz / ritz.norm();
  fix_phase(out.vector);
  return out;
}

/// V diag(values) V^dagger.
inline CMatrix spectral_matrix(const EigenSystem& e, const CVector& values) {
  if (values.size() != e.dim()) throw Error(ErrorKind::DimensionMismatch, "value count != dim");
  return e.vectors * values.asDiagonal() * e.vectors.adjoint();
}

/// Returns V diag(f(lambda)) V^dagger.
template <typename F>
  requires std::invocable<F, double>
CMatrix matrix_function(const EigenSystem& e, F&& f) {
  CVector values(e.dim());
  for (Index j = 0; j < e.dim(); ++j) {
    const Complex v = Complex(f(e.eigenvalues(j)));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::SingularFunctionValue,
                  "f is not finite at eigenvalue " + std::to_string(e.eigenvalues(j)));
    }
    values(j) = v;
  }
  return spectral_matrix(e, values);
}

/// exp(-i (1 - i eps) T H) on the eigenbasis of H. eps = 0 gives the unitary
/// propagator; eps > 0 damps excited states by exp(-eps T lambda).
inline CMatrix evolution_operator(const EigenSystem& e, double time, double eps) {
  if (!(eps >= 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be >= 0");
  const double growth = std::max(-eps * time * e.eigenvalues.minCoeff(),
                                 -eps * time * e.eigenvalues.maxCoeff());
  if (growth > 700.0) {
    throw Error(ErrorKind::InvalidArgument,
                "damping factor exp(-eps*T*lambda) would overflow");
  }
  const Complex factor = Complex(0.0, -1.0) * Complex(1.0, -eps) * time;
  return matrix_function(e, [factor](double lambda) { return std::exp(factor * lambda); });
}

}  // namespace zetadisc
