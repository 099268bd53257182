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
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "zetadisc/spectral.hpp"

namespace zetadisc {

/// A matrix-element callback <phi_l, A phi_k> indexed by Fourier modes.
template <typename F>
concept ModeElement = std::invocable<const F&, std::int64_t, std::int64_t> &&
    std::convertible_to<std::invoke_result_t<const F&, std::int64_t, std::int64_t>,
                        Complex>;

/// Nested ordering of the Fourier basis: index 0 is mode 0, index 2j-1 is
/// mode -j and index 2j is mode +j. The first n indices cover the modes
/// -floor(n/2) .. n-1-floor(n/2).
class BasisOrdering {
 public:
  explicit BasisOrdering(Index size) : size_(size) {
    if (size < 1) throw Error(ErrorKind::InvalidArgument, "basis size must be >= 1");
  }

  Index size() const noexcept { return size_; }

  static constexpr std::int64_t mode_of_index(Index j) noexcept {
    if (j == 0) return 0;
    return (j % 2 == 1) ? -static_cast<std::int64_t>((j + 1) / 2)
                        : static_cast<std::int64_t>(j / 2);
  }

  static constexpr Index index_of_mode(std::int64_t k) noexcept {
    if (k == 0) return 0;
    return k < 0 ? static_cast<Index>(-2 * k - 1) : static_cast<Index>(2 * k);
  }

  std::int64_t min_mode() const noexcept { return -static_cast<std::int64_t>(size_ / 2); }
  std::int64_t max_mode() const noexcept { return size_ - 1 - size_ / 2; }

  std::vector<std::int64_t> modes() const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(size_));
    for (Index j = 0; j < size_; ++j) out[static_cast<std::size_t>(j)] = mode_of_index(j);
    return out;
  }

 private:
  Index size_;
};

/// Galerkin matrix M_jk = element(mode(j), mode(k)) on the first n basis
/// vectors. The leading m x m block of the size-n result is bit-identical to
/// the size-m result.
template <ModeElement F>
HermitianOperator project_operator(const F& element, Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  CMatrix m(n, n);
  for (Index k = 0; k < n; ++k) {
    const auto mk = BasisOrdering::mode_of_index(k);
    for (Index j = 0; j < n; ++j) {
      m(j, k) = Complex(element(BasisOrdering::mode_of_index(j), mk));
    }
  }
  const double bound = 1e-12 * std::max(1.0, max_abs(m));
  for (Index k = 0; k < n; ++k) {
    for (Index j = k; j < n; ++j) {
      if (std::abs(m(j, k) - std::conj(m(k, j))) > bound) {
        throw Error(ErrorKind::HermiticityViolation,
                    "element is not conjugate-symmetric at modes (" +
                        std::to_string(BasisOrdering::mode_of_index(j)) + "," +
                        std::to_string(BasisOrdering::mode_of_index(k)) + ")");
      }
    }
  }
  return HermitianOperator(std::move(m));
}

/// Zero-pads `v` to length `n` (embedding along the nested ordering).
inline CVector embed(const CVector& v, Index n) {
  if (n < v.size()) throw Error(ErrorKind::DimensionMismatch, "cannot embed into a smaller space");
  CVector out = CVector::Zero(n);
  out.head(v.size()) = v;
  return out;
}

/// Re <state, A state>. The state must be normalized to within 1e-9.
inline double expectation(const CVector& state, const HermitianOperator& a) {
  if (state.size() != a.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "state has length " + std::to_string(state.size()) +
                    ", operator has dim " + std::to_string(a.dim()));
  }
  if (std::abs(state.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "state is not normalized");
  }
  const Complex v = state.dot(a.matrix() * state);
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, a.max_abs())) {
    throw Error(ErrorKind::NonHermitianInput,
                "expectation has imaginary part " + std::to_string(v.imag()));
  }
  return v.real();
}

struct DiscretizedVacuum {
  Index n = 0;
  double energy = 0.0;
  CVector state;
};

/// Dimensions above this use the iterative eigensolver.
inline constexpr Index kDenseEigenLimit = 512;
inline constexpr double kIterativeTolerance = 1e-13;

/// Normalized minimizer of x -> <x, H x> on the discretized space.
inline DiscretizedVacuum vacuum_state(const HermitianOperator& h) {
  DiscretizedVacuum out;
  out.n = h.dim();
  if (h.dim() <= kDenseEigenLimit) {
    const EigenSystem e = eig_hermitian(h);
    out.state = e.vectors.col(0);
  } else {
    out.state = smallest_eigenpair(h, kIterativeTolerance).vector;
  }
  out.energy = expectation(out.state, h);
  return out;
}

/// Weights (1 + k^2)^s per Fourier mode; defines the H_1 norm
/// sum_k w_k |x_k|^2 used by the Schatten probe.
struct SobolevWeight {
  double s = 0.0;

  double operator()(std::int64_t mode) const {
    return std::pow(1.0 + static_cast<double>(mode) * static_cast<double>(mode), s);
  }
};

struct ProbeResult {
  std::vector<Index> n_list;
  std::vector<double> residuals;

  /// Non-increasing up to `slack` relative growth per step, and the last
  /// residual strictly below the first.
  bool monotone(double slack = 0.1) const {
    if (residuals.empty()) return false;
    for (std::size_t i = 1; i < residuals.size(); ++i) {
      if (residuals[i] > (1.0 + slack) * residuals[i - 1]) return false;
    }
    return residuals.size() == 1 || residuals.back() < residuals.front();
  }
};

namespace detail {

inline void check_probe_grid(std::span<const Index> n_list, Index n_ref) {
  if (n_list.empty()) throw Error(ErrorKind::InvalidArgument, "n_list is empty");
  const Index n_max = *std::max_element(n_list.begin(), n_list.end());
  if (*std::min_element(n_list.begin(), n_list.end()) < 1) {
    throw Error(ErrorKind::InvalidArgument, "n_list entries must be >= 1");
  }
  if (n_ref < 2 * n_max) {
    throw Error(ErrorKind::GridTooSmall,
                "reference grid " + std::to_string(n_ref) + " is smaller than 2*" +
                    std::to_string(n_max));
  }
}

}  // namespace detail

/// r_n = || A_ref x - embed(P_n A Q_n x_n) || for each n, where x lives on the
/// reference grid (its length) and x_n is its truncation to n coefficients.
template <ModeElement F>
ProbeResult strong_convergence_probe(const F& element, const CVector& x,
                                     std::span<const Index> n_list) {
  const Index n_ref = x.size();
  detail::check_probe_grid(n_list, n_ref);

  // A_ref x, accumulated column by column without materializing A_ref.
  std::vector<std::int64_t> modes = BasisOrdering(n_ref).modes();
  CVector ax = CVector::Zero(n_ref);
  for (Index k = 0; k < n_ref; ++k) {
    if (x(k) == Complex(0.0)) continue;
    for (Index j = 0; j < n_ref; ++j) ax(j) += Complex(element(modes[j], modes[k])) * x(k);
  }

  ProbeResult out;
  out.n_list.assign(n_list.begin(), n_list.end());
  for (Index n : n_list) {
    double sq = ax.tail(n_ref - n).squaredNorm();
    for (Index j = 0; j < n; ++j) {
      Complex row(0.0);
      for (Index k = 0; k < n; ++k) row += Complex(element(modes[j], modes[k])) * x(k);
      sq += std::norm(ax(j) - row);
    }
    out.residuals.push_back(std::sqrt(sq));
  }
  return out;
}

/// Trace-norm residuals || (P_n A Q_n - A_ref) ||_{S_1(H_1, H)} on a reference
/// grid of size n_ref. In the orthonormal basis e_k / sqrt(w_k) of H_1 the
/// operator is represented by A W^{-1/2}; its singular values are summed.
template <ModeElement F>
ProbeResult schatten_convergence_probe(const F& element, const SobolevWeight& weight,
                                       Index n_ref, std::span<const Index> n_list) {
  detail::check_probe_grid(n_list, n_ref);
  const std::vector<std::int64_t> modes = BasisOrdering(n_ref).modes();
  CMatrix a_ref(n_ref, n_ref);
  for (Index k = 0; k < n_ref; ++k) {
    const double scale = 1.0 / std::sqrt(weight(modes[k]));
    for (Index j = 0; j < n_ref; ++j) a_ref(j, k) = Complex(element(modes[j], modes[k])) * scale;
  }
  ProbeResult out;
  out.n_list.assign(n_list.begin(), n_list.end());
  for (Index n : n_list) {
    CMatrix diff = a_ref;
    diff.topLeftCorner(n, n).setZero();
    Eigen::BDCSVD<CMatrix> svd(diff);
    out.residuals.push_back(svd.singularValues().sum());
  }
  return out;
}

}  // namespace zetadisc
