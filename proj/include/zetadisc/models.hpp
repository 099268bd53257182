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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

#include "zetadisc/error.hpp"

namespace zetadisc {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace detail

/// A logarithm of Gamma(z). The imaginary part is not reduced to the principal
/// branch; exp(log_gamma(z)) and differences of nearby values are what callers
/// should rely on.
inline Complex log_gamma(Complex z) {
  using std::numbers::pi;
  if (detail::is_nonpositive_integer(z)) {
    throw Error(ErrorKind::GammaPole, "Gamma has a pole at z = " + std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  const Complex w = z - 1.0;
  Complex series = detail::kLanczosCoeffs[0];
  for (std::size_t i = 1; i < detail::kLanczosCoeffs.size(); ++i) {
    series += detail::kLanczosCoeffs[i] / (w + static_cast<double>(i));
  }
  const Complex t = w + detail::kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (w + 0.5) * std::log(t) - t + std::log(series);
}

inline Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

/// log(iT) on the principal branch, i = e^{i pi/2}.
inline Complex log_i_times(double t) {
  return Complex(std::log(t), std::numbers::pi / 2.0);
}

// ---------------------------------------------------------------------------
// One-dimensional hydrogen on (-pi, pi)
// ---------------------------------------------------------------------------

struct HydrogenParams {
  double m = 1.0;  ///< electron mass
  double q = 1.0;  ///< electric coupling

  void validate() const {
    if (!(m > 0.0)) throw Error(ErrorKind::InvalidArgument, "hydrogen mass must be > 0");
    if (!(q >= 0.0)) throw Error(ErrorKind::InvalidArgument, "hydrogen coupling must be >= 0");
  }
};

/// <phi_l, H phi_k> for H = -d^2/(2m) + q x 1_{(0,pi)}(x) in the basis
/// phi_k = e^{ikx} / sqrt(2 pi).
inline Complex hydrogen_element(std::int64_t l, std::int64_t k, const HydrogenParams& p = {}) {
  using std::numbers::pi;
  const std::int64_t d = k - l;
  if (d == 0) {
    const double kk = static_cast<double>(k);
    return Complex(kk * kk / (2.0 * p.m) + p.q * pi / 4.0, 0.0);
  }
  const double dd = static_cast<double>(d);
  const double sign = (d % 2 == 0) ? 1.0 : -1.0;
  return p.q * (sign * Complex(1.0, -pi * dd) - 1.0) / (2.0 * pi * dd * dd);
}

/// <phi_l, x phi_k> on (-pi, pi).
inline Complex position_element(std::int64_t l, std::int64_t k) {
  const std::int64_t d = k - l;
  if (d == 0) return Complex(0.0);
  const double sign = (d % 2 == 0) ? 1.0 : -1.0;
  return Complex(0.0, -sign / static_cast<double>(d));
}

// ---------------------------------------------------------------------------
// Free radiation field
// ---------------------------------------------------------------------------

struct FreeFieldParams {
  double X = 1.0;    ///< spatial period
  int N = 1;         ///< photon number
  double T = 1.0;    ///< evolution time
  Complex z = 0.0;   ///< gauge parameter

  void validate() const {
    if (!(X > 0.0)) throw Error(ErrorKind::InvalidArgument, "X must be > 0");
    if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be >= 1");
    if (!(T > 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be > 0");
  }
};

/// Photon energy 2 pi |p| / X for lattice momentum p.
inline double freefield_dispersion(const std::array<std::int64_t, 3>& p, double X) {
  if (!(X > 0.0)) throw Error(ErrorKind::InvalidArgument, "X must be > 0");
  const double n2 = static_cast<double>(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  return 2.0 * std::numbers::pi * std::sqrt(n2) / X;
}

namespace detail {

inline void check_gamma_args(Complex z) {
  for (double shift : {3.0, 4.0}) {
    if (is_nonpositive_integer(z + shift)) {
      throw Error(ErrorKind::GammaPole,
                  "z + " + std::to_string(int(shift)) + " = " +
                      std::to_string((z + shift).real()) + " is a pole of Gamma");
    }
  }
}

}  // namespace detail

/// N Gamma(z+4) (iT)^{-z-4} / (Gamma(z+3) (iT)^{-z-3}): the gauge-regularized
/// energy of N free photons, which equals N (z+3) / (iT).
inline Complex freefield_zeta_ratio(const FreeFieldParams& prm) {
  prm.validate();
  detail::check_gamma_args(prm.z);
  const Complex log_it = log_i_times(prm.T);
  const Complex num = gamma(prm.z + 4.0) * std::exp((-prm.z - 4.0) * log_it);
  const Complex den = gamma(prm.z + 3.0) * std::exp((-prm.z - 3.0) * log_it);
  return static_cast<double>(prm.N) * num / den;
}

// ---------------------------------------------------------------------------
// Fock space
// ---------------------------------------------------------------------------

/// Surface area of the unit sphere in R^3.
inline constexpr double kUnitSphereArea = 4.0 * std::numbers::pi;

/// Per-particle-number regularizing factor
/// N^z v^z Gamma(4) Gamma(3)^N / (Gamma(z+4) Gamma(z+3)^N) (iT)^{Nz}.
inline Complex fock_alpha(int n, Complex z, double t) {
  detail::check_gamma_args(z);
  const double nn = static_cast<double>(n);
  const Complex log_alpha = z * std::log(nn) + z * std::log(kUnitSphereArea) +
                            std::log(6.0) + nn * std::log(2.0) - log_gamma(z + 4.0) -
                            nn * log_gamma(z + 3.0) + nn * z * log_i_times(t);
  return std::exp(log_alpha);
}

struct FockZetaResult {
  Complex ratio;
  /// Partial sums, both scaled by the same factor 1 / |first denominator term|.
  Complex numerator;
  Complex denominator;
  /// Certified bounds on the omitted tails, in the same scaling.
  double numerator_tail = 0.0;
  double denominator_tail = 0.0;
  /// Bound on |ratio - exact ratio| implied by the two tail bounds.
  double ratio_error_bound = 0.0;
  int cutoff = 0;
};

namespace detail {

// Sup over N >= k of ((N+1)/N)^e.
inline double growth_sup(double e, int k) {
  return e >= 0.0 ? std::pow((k + 1.0) / k, e) : 1.0;
}

}  // namespace detail

/// Gauge-regularized Fock-space energy: ratio of the simplified series
///   sum_N N^{z+1} v^{N+z} Gamma(4) Gamma(3)^N Gamma(z+3)^{-1} (iT)^{-3N-1}
///   sum_N N^z     v^{N+z} Gamma(4) Gamma(3)^N Gamma(z+4)^{-1} (iT)^{-3N}
/// truncated at `cutoff` with geometric tail bounds from the term ratio.
inline FockZetaResult fock_zeta_ratio(Complex z, double t, int cutoff) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be > 0");
  if (cutoff < 10) throw Error(ErrorKind::InvalidArgument, "cutoff must be >= 10");
  detail::check_gamma_args(z);

  const double v = kUnitSphereArea;
  // |t_{N+1} / t_N| = ((N+1)/N)^{Re e} * Gamma(3) v / T^3.
  const double base_ratio = 2.0 * v / (t * t * t);
  const double rho_num = base_ratio * detail::growth_sup(z.real() + 1.0, cutoff);
  const double rho_den = base_ratio * detail::growth_sup(z.real(), cutoff);
  if (!(rho_num < 1.0) || !(rho_den < 1.0)) {
    throw Error(ErrorKind::SeriesDivergence,
                "term ratio " + std::to_string(std::max(rho_num, rho_den)) +
                    " >= 1 at T = " + std::to_string(t));
  }

  const Complex log_it = log_i_times(t);
  const Complex lg3 = log_gamma(z + 3.0);
  const Complex lg4 = log_gamma(z + 4.0);
  auto log_num_term = [&](int n) {
    const double nn = n;
    return (z + 1.0) * std::log(nn) + (nn + z) * std::log(v) + std::log(6.0) +
           nn * std::log(2.0) - lg3 + (-3.0 * nn - 1.0) * log_it;
  };
  auto log_den_term = [&](int n) {
    const double nn = n;
    return z * std::log(nn) + (nn + z) * std::log(v) + std::log(6.0) + nn * std::log(2.0) -
           lg4 + (-3.0 * nn) * log_it;
  };

  // Scale both series by the first denominator term so nothing overflows.
  const Complex log_scale = log_den_term(1);
  FockZetaResult out;
  out.cutoff = cutoff;
  for (int n = 1; n <= cutoff; ++n) {
    out.numerator += std::exp(log_num_term(n) - log_scale);
    out.denominator += std::exp(log_den_term(n) - log_scale);
  }
  const double last_num = std::exp((log_num_term(cutoff) - log_scale).real());
  const double last_den = std::exp((log_den_term(cutoff) - log_scale).real());
  out.numerator_tail = last_num * rho_num / (1.0 - rho_num);
  out.denominator_tail = last_den * rho_den / (1.0 - rho_den);
  out.ratio = out.numerator / out.denominator;

  const double den_abs = std::abs(out.denominator);
  if (!(out.denominator_tail < den_abs)) {
    throw Error(ErrorKind::SeriesDivergence, "denominator tail bound exceeds partial sum");
  }
  // |(a+da)/(b+db) - a/b| <= (|da| + |a/b| |db|) / (|b| - |db|)
  out.ratio_error_bound = (out.numerator_tail + std::abs(out.ratio) * out.denominator_tail) /
                          (den_abs - out.denominator_tail);
  return out;
}

}  // namespace zetadisc
