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
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetadisc/disc.hpp"
#include "zetadisc/spectral.hpp"

namespace zetadisc {

/// Scalar map (lambda, z) -> g_z(lambda) defining a gauge family G(z) = g_z(H).
using GaugeMap = std::function<Complex(double, Complex)>;

/// G(z) = H^z with lambda^z = exp(z log lambda), lambda > 0.
inline Complex power_gauge(double lambda, Complex z) {
  return std::exp(z * std::log(lambda));
}

struct ZetaRatioSample {
  Complex z;
  Complex numerator;    ///< <psi_n, G(z) A psi_n>
  Complex denominator;  ///< <psi_n, G(z) psi_n>
  Complex ratio;
};

/// Finite set of gauge parameters kept at least `exclusion_radius` away from
/// recorded zeros of the denominator.
class ZGrid {
 public:
  ZGrid() = default;
  explicit ZGrid(std::vector<Complex> points, double exclusion_radius = 0.0)
      : points_(std::move(points)), exclusion_radius_(exclusion_radius) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      for (std::size_t j = i + 1; j < points_.size(); ++j) {
        if (points_[i] == points_[j]) {
          throw Error(ErrorKind::InvalidArgument, "z-grid points must be pairwise distinct");
        }
      }
    }
  }

  /// re_count x im_count points on [re_lo, re_hi] x [im_lo, im_hi].
  static ZGrid rectangle(double re_lo, double re_hi, int re_count, double im_lo,
                         double im_hi, int im_count) {
    if (re_count < 1 || im_count < 1) throw Error(ErrorKind::InvalidArgument, "empty z-grid");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(re_count * im_count));
    for (int a = 0; a < re_count; ++a) {
      const double re = re_count == 1 ? re_lo : re_lo + (re_hi - re_lo) * a / (re_count - 1);
      for (int b = 0; b < im_count; ++b) {
        const double im = im_count == 1 ? im_lo : im_lo + (im_hi - im_lo) * b / (im_count - 1);
        pts.emplace_back(re, im);
      }
    }
    return ZGrid(std::move(pts));
  }

  const std::vector<Complex>& points() const noexcept { return points_; }
  double exclusion_radius() const noexcept { return exclusion_radius_; }
  const std::vector<Complex>& zeros() const noexcept { return zeros_; }

  /// Records zeros and drops every point within `radius` of one.
  ZGrid excluding(std::span<const Complex> zeros, double radius) const {
    ZGrid out;
    out.exclusion_radius_ = radius;
    out.zeros_.assign(zeros.begin(), zeros.end());
    for (const Complex& p : points_) {
      const bool near = std::any_of(zeros.begin(), zeros.end(),
                                    [&](const Complex& z0) { return std::abs(p - z0) <= radius; });
      if (!near) out.points_.push_back(p);
    }
    return out;
  }

 private:
  std::vector<Complex> points_;
  double exclusion_radius_ = 0.0;
  std::vector<Complex> zeros_;
};

inline constexpr double kDenominatorFloor = 1e-12;

/// Gauge family on one discretized system: the eigendecomposition of H_n,
/// its vacuum psi_n and the functional calculus G(z) = g_z(H_n).
class DiscreteGauge {
 public:
  explicit DiscreteGauge(const HermitianOperator& h)
      : DiscreteGauge(h, &power_gauge, /*requires_positive=*/true) {}

  DiscreteGauge(const HermitianOperator& h, GaugeMap map, bool requires_positive = false)
      : system_(eig_hermitian(h)), map_(std::move(map)) {
    if (requires_positive && !(system_.eigenvalues(0) > 0.0)) {
      throw Error(ErrorKind::NonPositiveSpectrum,
                  "gauge needs a positive spectrum, min eigenvalue is " +
                      std::to_string(system_.eigenvalues(0)));
    }
    vacuum_ = system_.vectors.col(0);
    vacuum_coeffs_ = system_.vectors.adjoint() * vacuum_;
  }

  const EigenSystem& system() const noexcept { return system_; }
  const CVector& vacuum() const noexcept { return vacuum_; }
  Index dim() const noexcept { return system_.dim(); }

  CVector gauge_values(Complex z) const {
    CVector g(dim());
    for (Index j = 0; j < dim(); ++j) {
      g(j) = map_(system_.eigenvalues(j), z);
      if (!std::isfinite(g(j).real()) || !std::isfinite(g(j).imag())) {
        throw Error(ErrorKind::SingularFunctionValue,
                    "gauge map is not finite at eigenvalue " +
                        std::to_string(system_.eigenvalues(j)));
      }
    }
    return g;
  }

  /// G(z) as a dense matrix.
  CMatrix operator()(Complex z) const {
    return spectral_matrix(system_, gauge_values(z));
  }

  /// <psi_n, G(z) psi_n>.
  Complex denominator(Complex z) const {
    const CVector g = gauge_values(z);
    return (vacuum_coeffs_.cwiseAbs2().cast<Complex>().array() * g.array()).sum();
  }

  ZetaRatioSample ratio(const HermitianOperator& a, Complex z) const {
    if (a.dim() != dim()) {
      throw Error(ErrorKind::DimensionMismatch, "A and H dimensions differ");
    }
    const CVector g = gauge_values(z);
    // G(z)^dagger psi = V diag(conj g) V^dagger psi
    const CVector g_adj_psi = system_.vectors * (g.conjugate().asDiagonal() * vacuum_coeffs_);
    ZetaRatioSample s;
    s.z = z;
    s.numerator = g_adj_psi.dot(a.matrix() * vacuum_);
    s.denominator = (vacuum_coeffs_.cwiseAbs2().cast<Complex>().array() * g.array()).sum();
    if (std::abs(s.denominator) < kDenominatorFloor) {
      throw Error(ErrorKind::DenominatorNearZero,
                  "|<psi, G(z) psi>| = " + std::to_string(std::abs(s.denominator)));
    }
    s.ratio = s.numerator / s.denominator;
    return s;
  }

  /// tr(U G(z) A) / tr(U G(z)) with U = exp(-i (1 - i eps) T H). The common
  /// factor exp(-eps T lambda_0) is divided out of U before exponentiating.
  Complex damped_trace_ratio(const HermitianOperator& a, Complex z, double time,
                             double eps) const {
    const auto [num, den] = damped_traces(a, z, time, eps, /*centered=*/false);
    return num / den;
  }

  /// damped_trace_ratio(...) - <psi_0, A psi_0>, evaluated as a weighted sum
  /// over excited states so it keeps full relative precision when the
  /// deviation is far below the rounding level of the ratio itself.
  Complex damped_trace_deviation(const HermitianOperator& a, Complex z, double time,
                                 double eps) const {
    const auto [num, den] = damped_traces(a, z, time, eps, /*centered=*/true);
    return num / den;
  }

 private:
  std::pair<Complex, Complex> damped_traces(const HermitianOperator& a, Complex z,
                                            double time, double eps, bool centered) const {
    if (a.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "A and H dimensions differ");
    if (!(eps >= 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be >= 0");
    const double lambda0 = system_.eigenvalues(0);
    const EigenSystem shifted{system_.eigenvalues.array() - lambda0, system_.vectors};
    const CMatrix u = evolution_operator(shifted, time, eps);
    const CVector g = gauge_values(z);
    if (!centered) {
      const CMatrix ug = u * (*this)(z);
      const Complex den = ug.trace();
      if (std::abs(den) < kDenominatorFloor) {
        throw Error(ErrorKind::DenominatorNearZero, "|tr(U G)| = " + std::to_string(std::abs(den)));
      }
      return {(ug * a.matrix()).trace(), den};
    }
    // Eigenbasis form: tr(U G A) = sum_j u_j g_j a_jj.
    const CVector diag_a = (system_.vectors.adjoint() * a.matrix() * system_.vectors).diagonal();
    const Complex factor = Complex(0.0, -1.0) * Complex(1.0, -eps) * time;
    Complex num(0.0), den(0.0);
    for (Index j = 0; j < dim(); ++j) {
      const Complex w = std::exp(factor * shifted.eigenvalues(j)) * g(j);
      den += w;
      if (j > 0) num += w * (diag_a(j) - diag_a(0));
    }
    if (std::abs(den) < kDenominatorFloor) {
      throw Error(ErrorKind::DenominatorNearZero, "|tr(U G)| = " + std::to_string(std::abs(den)));
    }
    return {num, den};
  }

  EigenSystem system_;
  GaugeMap map_;
  CVector vacuum_;
  CVector vacuum_coeffs_;
};

inline ZetaRatioSample gauge_ratio(const HermitianOperator& h, const HermitianOperator& a,
                                   Complex z) {
  return DiscreteGauge(h).ratio(a, z);
}

inline Complex damped_trace_ratio(const HermitianOperator& h, const HermitianOperator& a,
                                  Complex z, double time, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be > 0");
  if (!(time >= 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be >= 0");
  return DiscreteGauge(h).damped_trace_ratio(a, z, time, eps);
}

inline constexpr double kZeroThreshold = 1e-10;

/// Grid points where |<psi_n, G(z) psi_n>| < 1e-10.
inline std::vector<Complex> denominator_zero_scan(const DiscreteGauge& gauge, const ZGrid& grid) {
  std::vector<Complex> zeros;
  for (const Complex& z : grid.points()) {
    if (std::abs(gauge.denominator(z)) < kZeroThreshold) zeros.push_back(z);
  }
  return zeros;
}

inline std::vector<Complex> denominator_zero_scan(const HermitianOperator& h, const ZGrid& grid) {
  return denominator_zero_scan(DiscreteGauge(h), grid);
}

struct RatioScan {
  std::vector<Index> n_list;
  std::vector<Complex> z_points;
  /// ratios[i][p] = R_{n_list[i]}(z_points[p]); NaN where excluded.
  std::vector<std::vector<Complex>> ratios;
  /// Per z: max over consecutive n of |R_n(z) - R_n'(z)|.
  std::vector<double> per_z_residual;
  /// Per consecutive (n_i, n_{i+1}): max over the grid of |R_{n_{i+1}} - R_{n_i}|.
  std::vector<double> per_step_residual;
  /// Points dropped because some denominator fell below the floor.
  std::vector<Complex> excluded;

  bool decreasing(double slack = 0.1) const {
    for (std::size_t i = 1; i < per_step_residual.size(); ++i) {
      if (per_step_residual[i] > (1.0 + slack) * per_step_residual[i - 1]) return false;
    }
    return per_step_residual.size() < 2 ||
           per_step_residual.back() < per_step_residual.front();
  }
};

/// Samples R_n(z) for each n and z and reports Cauchy-in-n residuals.
template <ModeElement FH, ModeElement FA>
RatioScan ratio_convergence_scan(const FH& element_h, const FA& element_a, const ZGrid& grid,
                                 std::span<const Index> n_list) {
  if (n_list.size() < 3) throw Error(ErrorKind::InvalidArgument, "n_list needs >= 3 entries");
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
    throw Error(ErrorKind::InvalidArgument, "n_list must be strictly ascending");
  }
  RatioScan out;
  out.n_list.assign(n_list.begin(), n_list.end());
  out.z_points = grid.points();
  const std::size_t nz = out.z_points.size();
  std::vector<bool> excluded(nz, false);
  const Complex nan(std::numeric_limits<double>::quiet_NaN(), 0.0);

  for (Index n : n_list) {
    const HermitianOperator h = project_operator(element_h, n);
    const HermitianOperator a = project_operator(element_a, n);
    const DiscreteGauge gauge(h);
    std::vector<Complex> row(nz, nan);
    for (std::size_t p = 0; p < nz; ++p) {
      if (excluded[p]) continue;
      try {
        row[p] = gauge.ratio(a, out.z_points[p]).ratio;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DenominatorNearZero) throw;
        excluded[p] = true;
      }
    }
    out.ratios.push_back(std::move(row));
  }
  for (std::size_t p = 0; p < nz; ++p) {
    if (excluded[p]) out.excluded.push_back(out.z_points[p]);
  }
  out.per_z_residual.assign(nz, 0.0);
  for (std::size_t i = 0; i + 1 < out.ratios.size(); ++i) {
    double step = 0.0;
    for (std::size_t p = 0; p < nz; ++p) {
      if (excluded[p]) continue;
      const double d = std::abs(out.ratios[i + 1][p] - out.ratios[i][p]);
      step = std::max(step, d);
      out.per_z_residual[p] = std::max(out.per_z_residual[p], d);
    }
    out.per_step_residual.push_back(step);
  }
  return out;
}

/// Discrete Cauchy integral (1/2 pi i) \oint f(z)/(z - z0) dz over the circle
/// |z - z0| = radius with an m-point trapezoid rule; equals f(z0) for f
/// holomorphic in the closed disk.
template <typename F>
Complex cauchy_center_value(F&& f, Complex z0, double radius, int m = 32) {
  Complex sum(0.0);
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / m;
    sum += Complex(f(z0 + std::polar(radius, theta)));
  }
  return sum / static_cast<double>(m);
}

}  // namespace zetadisc
