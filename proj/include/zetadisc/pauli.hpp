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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "zetadisc/spectral.hpp"

namespace zetadisc {

/// S^q = sigma^{q_{Q-1}} (x) ... (x) sigma^{q_0} with q = sum_n q_n 4^n.
/// Qubit n is bit n of a basis index, so |q> indices and Pauli digits share
/// the same little-endian layout.
class PauliWord {
 public:
  PauliWord(int qubits, std::uint64_t index) : qubits_(qubits), index_(index) {
    if (qubits < 1 || qubits > 31) throw Error(ErrorKind::InvalidArgument, "qubit count out of range");
    if (index >= (std::uint64_t{1} << (2 * qubits))) {
      throw Error(ErrorKind::InvalidArgument, "Pauli index exceeds 4^Q");
    }
  }

  /// From digits written most-significant first: {q_{Q-1}, ..., q_0}.
  static PauliWord from_digits(const std::vector<int>& msb_first) {
    std::uint64_t index = 0;
    for (int d : msb_first) {
      if (d < 0 || d > 3) throw Error(ErrorKind::InvalidArgument, "Pauli digit must be 0..3");
      index = index * 4 + static_cast<std::uint64_t>(d);
    }
    return PauliWord(static_cast<int>(msb_first.size()), index);
  }

  int qubits() const noexcept { return qubits_; }
  std::uint64_t index() const noexcept { return index_; }
  int digit(int qubit) const noexcept { return static_cast<int>((index_ >> (2 * qubit)) & 3U); }

  /// Base-4 word q_{Q-1} ... q_0.
  std::string base4() const {
    std::string s(static_cast<std::size_t>(qubits_), '0');
    for (int n = 0; n < qubits_; ++n) s[static_cast<std::size_t>(qubits_ - 1 - n)] = char('0' + digit(n));
    return s;
  }

  /// Bits flipped by S^q (qubits carrying sigma^1 or sigma^2).
  std::uint64_t flip_mask() const noexcept {
    std::uint64_t m = 0;
    for (int n = 0; n < qubits_; ++n) {
      const int d = digit(n);
      if (d == 1 || d == 2) m |= std::uint64_t{1} << n;
    }
    return m;
  }

  /// S^q_{jk}; nonzero only for j = k ^ flip_mask().
  Complex element(std::uint64_t j, std::uint64_t k) const noexcept {
    Complex v(1.0, 0.0);
    for (int n = 0; n < qubits_; ++n) {
      const int jn = static_cast<int>((j >> n) & 1U);
      const int kn = static_cast<int>((k >> n) & 1U);
      switch (digit(n)) {
        case 0: if (jn != kn) return 0.0; break;
        case 1: if (jn == kn) return 0.0; break;
        case 2:
          if (jn == kn) return 0.0;
          v *= jn == 0 ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
          break;
        case 3:
          if (jn != kn) return 0.0;
          if (jn == 1) v = -v;
          break;
      }
    }
    return v;
  }

 private:
  int qubits_;
  std::uint64_t index_;
};

inline CMatrix pauli_matrix(const PauliWord& w) {
  const std::uint64_t dim = std::uint64_t{1} << w.qubits();
  const std::uint64_t flips = w.flip_mask();
  CMatrix m = CMatrix::Zero(Index(dim), Index(dim));
  for (std::uint64_t k = 0; k < dim; ++k) {
    const std::uint64_t j = k ^ flips;
    m(Index(j), Index(k)) = w.element(j, k);
  }
  return m;
}

struct PauliCoefficients {
  int qubits = 0;
  std::vector<double> coeffs;  ///< length 4^Q, coeffs[q] = tr(H S^q) / 2^Q

  std::size_t size() const noexcept { return coeffs.size(); }
};

inline int qubits_for_dim(Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw Error(ErrorKind::NotPowerOfTwo,
                "dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

/// Coefficients c_q = tr(H S^q) / 2^Q. Each trace is a single pass over the
/// 2^Q nonzero entries of S^q; no Pauli matrix is materialized.
inline PauliCoefficients decompose(const HermitianOperator& h) {
  const int qubits = qubits_for_dim(h.dim());
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  const std::uint64_t terms = std::uint64_t{1} << (2 * qubits);
  PauliCoefficients out{qubits, std::vector<double>(terms)};
  const double tol = 1e-12 * std::max(1.0, h.max_abs());
  for (std::uint64_t q = 0; q < terms; ++q) {
    const PauliWord w(qubits, q);
    const std::uint64_t flips = w.flip_mask();
    Complex tr(0.0);
    // tr(H S) = sum_k H_{j k} S_{k j} with j = k ^ flips
    for (std::uint64_t k = 0; k < dim; ++k) {
      const std::uint64_t j = k ^ flips;
      tr += h(Index(k), Index(j)) * w.element(j, k);
    }
    tr /= static_cast<double>(dim);
    if (std::abs(tr.imag()) > tol) {
      throw Error(ErrorKind::NonHermitianInput, "Pauli coefficient has imaginary part " +
                                                    std::to_string(tr.imag()));
    }
    out.coeffs[q] = tr.real();
  }
  return out;
}

inline HermitianOperator reconstruct(const PauliCoefficients& c) {
  if (c.qubits < 1 || c.coeffs.size() != (std::size_t{1} << (2 * c.qubits))) {
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector length is not 4^Q");
  }
  const std::uint64_t dim = std::uint64_t{1} << c.qubits;
  CMatrix m = CMatrix::Zero(Index(dim), Index(dim));
  for (std::uint64_t q = 0; q < c.coeffs.size(); ++q) {
    if (c.coeffs[q] == 0.0) continue;
    const PauliWord w(c.qubits, q);
    const std::uint64_t flips = w.flip_mask();
    for (std::uint64_t k = 0; k < dim; ++k) {
      const std::uint64_t j = k ^ flips;
      m(Index(j), Index(k)) += c.coeffs[q] * w.element(j, k);
    }
  }
  return HermitianOperator(std::move(m));
}

/// CSV with columns q_index,base4_word,coefficient sorted by q_index. Lines
/// in `preamble` are written first, each prefixed with "# ".
inline void write_pauli_csv(std::ostream& os, const PauliCoefficients& c,
                            const std::vector<std::string>& preamble = {}) {
  for (const auto& line : preamble) os << "# " << line << '\n';
  os << "q_index,base4_word,coefficient\n";
  char buf[64];
  for (std::uint64_t q = 0; q < c.coeffs.size(); ++q) {
    std::snprintf(buf, sizeof buf, "%.17g", c.coeffs[q]);
    os << q << ',' << PauliWord(c.qubits, q).base4() << ',' << buf << '\n';
  }
}

inline PauliCoefficients read_pauli_csv(std::istream& is) {
  PauliCoefficients out;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "q_index,base4_word,coefficient") {
        throw Error(ErrorKind::InvalidArgument, "unexpected Pauli CSV header: " + line);
      }
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string idx, word, value;
    if (!std::getline(ss, idx, ',') || !std::getline(ss, word, ',') || !std::getline(ss, value)) {
      throw Error(ErrorKind::InvalidArgument, "malformed Pauli CSV row: " + line);
    }
    if (out.qubits == 0) out.qubits = static_cast<int>(word.size());
    if (static_cast<int>(word.size()) != out.qubits ||
        std::stoull(idx) != out.coeffs.size()) {
      throw Error(ErrorKind::InvalidArgument, "Pauli CSV rows must be sorted and uniform: " + line);
    }
    out.coeffs.push_back(std::stod(value));
  }
  if (out.qubits == 0 || out.coeffs.size() != (std::size_t{1} << (2 * out.qubits))) {
    throw Error(ErrorKind::DimensionMismatch, "Pauli CSV does not hold 4^Q rows");
  }
  return out;
}

}  // namespace zetadisc
