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

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "test_support.hpp"

namespace zetadisc {
namespace {

using testing::random_hermitian;

CMatrix sigma(int d) {
  CMatrix m(2, 2);
  switch (d) {
    case 0: m << 1.0, 0.0, 0.0, 1.0; break;
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0; break;
    default: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

// Explicit Kronecker product sigma^{q_{Q-1}} (x) ... (x) sigma^{q_0}.
CMatrix kron_oracle(const PauliWord& w) {
  CMatrix out = CMatrix::Ones(1, 1);
  for (int n = w.qubits() - 1; n >= 0; --n) {
    const CMatrix s = sigma(w.digit(n));
    CMatrix next(out.rows() * 2, out.cols() * 2);
    for (Index a = 0; a < out.rows(); ++a)
      for (Index b = 0; b < out.cols(); ++b) next.block(2 * a, 2 * b, 2, 2) = out(a, b) * s;
    out = next;
  }
  return out;
}

TEST(PauliMatrix, SingleQubit) {
  EXPECT_EQ(pauli_matrix(PauliWord(1, 0)), CMatrix::Identity(2, 2));
  EXPECT_EQ(pauli_matrix(PauliWord(1, 2)), sigma(2));
}

TEST(PauliMatrix, SigmaThreeTensorSigmaOne) {
  const PauliWord w = PauliWord::from_digits({3, 1});
  EXPECT_EQ(w.index(), 3u * 4u + 1u);
  EXPECT_EQ(w.base4(), "31");
  CMatrix expected = CMatrix::Zero(4, 4);
  expected.block(0, 0, 2, 2) = sigma(1);
  expected.block(2, 2, 2, 2) = -sigma(1);
  EXPECT_EQ(pauli_matrix(w), expected);
}

TEST(PauliMatrix, DigitProductMatchesKroneckerBitExact) {
  for (int q = 1; q <= 3; ++q) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * q)); ++i) {
      const PauliWord w(q, i);
      EXPECT_TRUE(pauli_matrix(w) == kron_oracle(w)) << q << ":" << i;
    }
  }
}

TEST(PauliWord, Validation) {
  EXPECT_THROW(PauliWord(1, 4), Error);
  EXPECT_THROW(PauliWord::from_digits({4}), Error);
  EXPECT_THROW(PauliWord(0, 0), Error);
}

TEST(PauliBasis, OrthogonalityExhaustive) {
  for (int q = 1; q <= 3; ++q) {
    const std::uint64_t terms = std::uint64_t{1} << (2 * q);
    const double dim = double(1u << q);
    for (std::uint64_t a = 0; a < terms; ++a) {
      const CMatrix sa = pauli_matrix(PauliWord(q, a));
      for (std::uint64_t b = 0; b < terms; ++b) {
        const Complex tr = (sa * pauli_matrix(PauliWord(q, b))).trace();
        EXPECT_NEAR(std::abs(tr - (a == b ? dim : 0.0)), 0.0, 1e-14);
      }
    }
  }
}

TEST(PauliBasis, OrthogonalitySampled) {
  std::mt19937_64 rng(11);
  for (int q = 4; q <= 6; ++q) {
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << (2 * q)) - 1);
    for (int s = 0; s < 40; ++s) {
      const std::uint64_t a = pick(rng), b = s % 4 == 0 ? a : pick(rng);
      const Complex tr = (pauli_matrix(PauliWord(q, a)) * pauli_matrix(PauliWord(q, b))).trace();
      EXPECT_NEAR(std::abs(tr - (a == b ? double(1u << q) : 0.0)), 0.0, 1e-12);
    }
  }
}

TEST(Decompose, IdentityAndBasisElements) {
  const PauliCoefficients id = decompose(HermitianOperator(CMatrix::Identity(2, 2)));
  EXPECT_EQ(id.coeffs, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  const PauliWord xx = PauliWord::from_digits({1, 1});
  const PauliCoefficients c = decompose(HermitianOperator(pauli_matrix(xx)));
  for (std::uint64_t q = 0; q < 16; ++q) EXPECT_EQ(c.coeffs[q], q == xx.index() ? 1.0 : 0.0);
}

TEST(Decompose, HydrogenOneQubit) {
  using std::numbers::pi;
  const PauliCoefficients c = decompose(testing::hydrogen_matrix(2));
  EXPECT_NEAR(c.coeffs[0], 0.25 + pi / 4.0, 1e-12);
  EXPECT_NEAR(c.coeffs[1], -1.0 / pi, 1e-12);
  EXPECT_NEAR(c.coeffs[2], 0.5, 1e-12);
  EXPECT_NEAR(c.coeffs[3], -0.25, 1e-12);
}

TEST(Decompose, RoundTripAndParseval) {
  for (int q = 1; q <= 6; ++q) {
    for (int trial = 0; trial < 3; ++trial) {
      const HermitianOperator h(random_hermitian(Index(1) << q, 100 * q + trial));
      const PauliCoefficients c = decompose(h);
      EXPECT_LE(max_abs(reconstruct(c).matrix() - h.matrix()), 1e-12 * h.max_abs());
      double sum_sq = 0.0;
      for (double v : c.coeffs) sum_sq += v * v;
      const double frob = h.matrix().squaredNorm();
      EXPECT_NEAR(sum_sq * double(1u << q), frob, 1e-10 * frob);
    }
  }
  const HermitianOperator h3 = testing::hydrogen_matrix(8);
  EXPECT_LE(max_abs(reconstruct(decompose(h3)).matrix() - h3.matrix()), 1e-12 * h3.max_abs());
}

TEST(Decompose, Linearity) {
  const CMatrix a = random_hermitian(8, 1), b = random_hermitian(8, 2);
  const double alpha = 0.7, beta = -1.3;
  const auto ca = decompose(HermitianOperator(a)).coeffs;
  const auto cb = decompose(HermitianOperator(b)).coeffs;
  const auto cab = decompose(HermitianOperator(alpha * a + beta * b)).coeffs;
  for (std::size_t q = 0; q < cab.size(); ++q) {
    EXPECT_NEAR(cab[q], alpha * ca[q] + beta * cb[q], 1e-12);
  }
}

TEST(Decompose, NotPowerOfTwo) {
  try {
    decompose(HermitianOperator(CMatrix::Identity(3, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPowerOfTwo);
  }
}

TEST(Reconstruct, OneHotGivesBasisElement) {
  for (std::uint64_t q = 0; q < 16; ++q) {
    PauliCoefficients c{2, std::vector<double>(16, 0.0)};
    c.coeffs[q] = 1.0;
    EXPECT_EQ(reconstruct(c).matrix(), pauli_matrix(PauliWord(2, q)));
  }
}

TEST(PauliCsv, RoundTripIsExact) {
  const PauliCoefficients c = decompose(testing::hydrogen_matrix(8));
  std::stringstream ss;
  write_pauli_csv(ss, c, {"tool zetadisc", "config_hash 0"});
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("# tool zetadisc\n", 0), 0u);
  EXPECT_NE(text.find("q_index,base4_word,coefficient\n"), std::string::npos);
  const PauliCoefficients back = read_pauli_csv(ss);
  EXPECT_EQ(back.qubits, 3);
  EXPECT_EQ(back.coeffs, c.coeffs);
}

TEST(PauliCsv, RejectsMalformedInput) {
  std::stringstream bad("q_index,base4_word,coefficient\n0,0,1.0\n");
  EXPECT_THROW(read_pauli_csv(bad), Error);
  std::stringstream header("a,b,c\n");
  EXPECT_THROW(read_pauli_csv(header), Error);
}

}  // namespace
}  // namespace zetadisc
