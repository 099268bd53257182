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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zetadisc/error.hpp"

namespace zetadisc {

/// Energies sampled along an increasing resolution axis (dimension n or
/// qubit count Q), compared against the value at a reference resolution.
struct ConvergenceSeries {
  std::vector<std::int64_t> abscissa;
  std::vector<double> values;
  double reference = 0.0;

  void validate() const {
    if (abscissa.size() != values.size()) {
      throw Error(ErrorKind::DimensionMismatch, "abscissa and values differ in length");
    }
    for (std::size_t i = 1; i < abscissa.size(); ++i) {
      if (abscissa[i] <= abscissa[i - 1]) {
        throw Error(ErrorKind::InvalidArgument, "abscissa must be strictly increasing");
      }
    }
  }
};

/// |value - reference| / |reference| for each sample.
inline std::vector<double> relative_errors(const ConvergenceSeries& s) {
  s.validate();
  if (s.reference == 0.0) throw Error(ErrorKind::ZeroReference, "reference value is zero");
  std::vector<double> out;
  out.reserve(s.values.size());
  for (double v : s.values) out.push_back(std::abs(v - s.reference) / std::abs(s.reference));
  return out;
}

/// error ~ a * exp(-b * abscissa)
struct ExponentialFit {
  double a = 0.0;
  double b = 0.0;
  double r_squared = 0.0;
};

inline constexpr double kLogFloor = 1e-300;

/// Ordinary least squares of log(error) against the abscissa. Zero errors are
/// clipped to 1e-300 before taking logarithms.
inline ExponentialFit fit_exponential(std::span<const double> abscissa,
                                      std::span<const double> errors) {
  if (abscissa.size() != errors.size()) {
    throw Error(ErrorKind::DimensionMismatch, "abscissa and errors differ in length");
  }
  const std::size_t n = abscissa.size();
  const auto positive = std::count_if(errors.begin(), errors.end(), [](double e) { return e > 0.0; });
  if (positive < 3) {
    throw Error(ErrorKind::DegenerateFit, "need at least 3 points with positive error");
  }
  if (std::adjacent_find(errors.begin(), errors.end(), std::not_equal_to<>()) == errors.end()) {
    throw Error(ErrorKind::DegenerateFit, "all errors are equal");
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::log(std::max(errors[i], kLogFloor));

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += abscissa[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = abscissa[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorKind::DegenerateFit, "abscissa values are all equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (intercept + slope * abscissa[i]);
    ss_res += r * r;
  }
  ExponentialFit fit;
  fit.a = std::exp(intercept);
  fit.b = -slope;
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  if (!(fit.b > 0.0)) {
    throw Error(ErrorKind::DegenerateFit, "errors do not decay (rate " + std::to_string(fit.b) + ")");
  }
  return fit;
}

}  // namespace zetadisc
