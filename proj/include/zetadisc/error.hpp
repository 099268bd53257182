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

#include <stdexcept>
#include <string>
#include <string_view>

namespace zetadisc {

enum class ErrorKind {
  NonHermitianInput,
  HermiticityViolation,
  ConvergenceFailure,
  SingularFunctionValue,
  DimensionMismatch,
  GridTooSmall,
  GammaPole,
  SeriesDivergence,
  NonPositiveSpectrum,
  DenominatorNearZero,
  NotPowerOfTwo,
  ParamLengthMismatch,
  SpecMismatch,
  ZeroReference,
  DegenerateFit,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::HermiticityViolation: return "HermiticityViolation";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::SingularFunctionValue: return "SingularFunctionValue";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::GammaPole: return "GammaPole";
    case ErrorKind::SeriesDivergence: return "SeriesDivergence";
    case ErrorKind::NonPositiveSpectrum: return "NonPositiveSpectrum";
    case ErrorKind::DenominatorNearZero: return "DenominatorNearZero";
    case ErrorKind::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorKind::ParamLengthMismatch: return "ParamLengthMismatch";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::ZeroReference: return "ZeroReference";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zetadisc
