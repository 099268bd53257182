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

#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "test_support.hpp"

namespace zetadisc {
namespace {

using testing::hydrogen;
using testing::hydrogen_matrix;
using testing::position;

TEST(BasisOrdering, NestedModeOrder) {
  EXPECT_EQ(BasisOrdering::mode_of_index(0), 0);
  EXPECT_EQ(BasisOrdering::mode_of_index(1), -1);
  EXPECT_EQ(BasisOrdering::mode_of_index(2), 1);
  EXPECT_EQ(BasisOrdering::mode_of_index(3), -2);
  EXPECT_EQ(BasisOrdering::mode_of_index(4), 2);
  for (Index j = 0; j < 5000; ++j) {
    EXPECT_EQ(BasisOrdering::index_of_mode(BasisOrdering::mode_of_index(j)), j);
  }
  for (Index n = 1; n <= 64; ++n) {
    const BasisOrdering b(n);
    const auto modes = b.modes();
    EXPECT_EQ(*std::min_element(modes.begin(), modes.end()), b.min_mode());
    EXPECT_EQ(*std::max_element(modes.begin(), modes.end()), b.max_mode());
    EXPECT_EQ(b.max_mode() - b.min_mode() + 1, n);
  }
}

TEST(ProjectOperator, DeltaGivesIdentity) {
  auto delta = [](std::int64_t l, std::int64_t k) { return Complex(l == k ? 1.0 : 0.0); };
  EXPECT_EQ(project_operator(delta, 3).matrix(), CMatrix::Identity(3, 3));
}

TEST(ProjectOperator, HydrogenSmallMatricesMatchQuadrature) {
  EXPECT_NEAR(std::abs(hydrogen_matrix(1)(0, 0) - std::numbers::pi / 4.0), 0.0, 1e-15);
  const HermitianOperator h = hydrogen_matrix(5);
  const auto modes = BasisOrdering(5).modes();
  for (Index j = 0; j < 5; ++j) {
    for (Index k = 0; k < 5; ++k) {
      const double d = static_cast<double>(modes[k] - modes[j]);
      // <phi_l, x 1_(0,pi) phi_k> = (1/2pi) int_0^pi x e^{i(k-l)x} dx.
      Complex oracle = testing::integrate(
          [d](double x) { return x * std::exp(Complex(0.0, d * x)); }, 0.0, std::numbers::pi);
      oracle /= 2.0 * std::numbers::pi;
      if (j == k) oracle += 0.5 * static_cast<double>(modes[k] * modes[k]);
      EXPECT_NEAR(std::abs(h(j, k) - oracle), 0.0, 1e-12) << j << "," << k;
    }
  }
}

TEST(ProjectOperator, RejectsAsymmetricElement) {
  auto bad = [](std::int64_t l, std::int64_t k) { return Complex(static_cast<double>(l), 0.0) + 0.0 * k; };
  try {
    project_operator(bad, 4);
    FAIL() << "expected HermiticityViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HermiticityViolation);
  }
}

TEST(ProjectOperator, NestingIsExact) {
  const HermitianOperator big = hydrogen_matrix(64);
  for (Index m = 1; m <= 64; ++m) {
    EXPECT_TRUE(hydrogen_matrix(m).matrix() == big.matrix().topLeftCorner(m, m)) << "m=" << m;
  }
}

TEST(VacuumState, DiagonalExample) {
  CMatrix m = CMatrix::Zero(3, 3);
  m.diagonal() << 5.0, 2.0, 7.0;
  const DiscretizedVacuum v = vacuum_state(HermitianOperator(m));
  EXPECT_NEAR(v.energy, 2.0, 1e-14);
  EXPECT_NEAR(std::abs(v.state(1)), 1.0, 1e-14);
  EXPECT_EQ(v.n, 3);
}

TEST(VacuumState, HydrogenReferenceMinima) {
  for (int q = 1; q <= 5; ++q) {
    EXPECT_NEAR(vacuum_state(hydrogen_matrix(Index(1) << q)).energy, testing::kReferenceMinima[q - 1],
                1e-9)
        << "Q=" << q;
  }
}

TEST(VacuumState, EnergiesNonIncreasingInDimension) {
  double previous = std::numeric_limits<double>::infinity();
  for (Index n = 1; n <= 64; ++n) {
    const double e = vacuum_state(hydrogen_matrix(n)).energy;
    EXPECT_LE(e, previous + 1e-13) << "n=" << n;
    previous = e;
  }
}

TEST(VacuumState, OverlapWithFinerVacuumGrows) {
  double previous = 0.0;
  for (Index n = 2; n <= 512; n *= 2) {
    const CVector coarse = embed(vacuum_state(hydrogen_matrix(n)).state, 2 * n);
    const CVector fine = vacuum_state(hydrogen_matrix(2 * n)).state;
    const double overlap = std::abs(coarse.dot(fine));
    EXPECT_GE(overlap, previous - 1e-12) << "n=" << n;
    previous = overlap;
  }
  EXPECT_GT(previous, 1.0 - 1e-8);
}

TEST(VacuumState, IterativeBranchMatchesDense) {
  const HermitianOperator h = hydrogen_matrix(600);
  const DiscretizedVacuum v = vacuum_state(h);
  EXPECT_NEAR(v.energy, eig_hermitian(h).eigenvalues(0), 1e-11);
}

TEST(Expectation, ChecksNormAndDimension) {
  CMatrix m = CMatrix::Zero(2, 2);
  m.diagonal() << 1.0, 3.0;
  const HermitianOperator a(m);
  CVector s(2);
  s << std::sqrt(0.5), std::sqrt(0.5);
  EXPECT_NEAR(expectation(s, a), 2.0, 1e-15);
  EXPECT_THROW(expectation(CVector::Ones(2), a), Error);
  try {
    expectation(CVector::Ones(3) / std::sqrt(3.0), a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Embed, PadsWithZeros) {
  CVector v(2);
  v << 1.0, 2.0;
  const CVector e = embed(v, 4);
  EXPECT_EQ(e.size(), 4);
  EXPECT_EQ(e(1), Complex(2.0));
  EXPECT_EQ(e(3), Complex(0.0));
  EXPECT_THROW(embed(v, 1), Error);
}

TEST(StrongProbe, IdentityResidualIsTailNorm) {
  auto identity = [](std::int64_t l, std::int64_t k) { return Complex(l == k ? 1.0 : 0.0); };
  const Index n_ref = 256;
  CVector x(n_ref);
  for (Index j = 0; j < n_ref; ++j) x(j) = 1.0 / std::pow(1.0 + j, 2.0);
  const std::vector<Index> n_list{1, 4, 16, 64, 128};
  const ProbeResult r = strong_convergence_probe(identity, x, n_list);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    double tail = 0.0;
    for (Index j = n_list[i]; j < n_ref; ++j) tail += std::norm(x(j));
    EXPECT_NEAR(r.residuals[i], std::sqrt(tail), 1e-15);
  }
  EXPECT_TRUE(r.monotone());
}

TEST(StrongProbe, HamiltonianAndPositionDecreaseOnVacuum) {
  const Index n_ref = 1024;
  const CVector x = vacuum_state(hydrogen_matrix(n_ref)).state;
  const std::vector<Index> n_list{8, 16, 32, 64, 128, 256, 512};
  const ProbeResult rh = strong_convergence_probe(hydrogen(), x, n_list);
  const ProbeResult rx = strong_convergence_probe(position(), x, n_list);
  EXPECT_TRUE(rh.monotone());
  EXPECT_TRUE(rx.monotone());
}

TEST(StrongProbe, GridTooSmall) {
  const std::vector<Index> n_list{8, 64};
  try {
    strong_convergence_probe(position(), CVector::Ones(100), n_list);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridTooSmall);
  }
}

TEST(SchattenProbe, InverseSquareTailMatchesTrigamma) {
  // Singular values 1/(j+1)^2 on index j; the zeroed block leaves j >= n.
  auto element = [](std::int64_t l, std::int64_t k) {
    const double j = static_cast<double>(BasisOrdering::index_of_mode(k));
    return Complex(l == k ? 1.0 / ((j + 1.0) * (j + 1.0)) : 0.0);
  };
  const Index n_ref = 256;
  const std::vector<Index> n_list{1, 8, 32, 128};
  const ProbeResult r = schatten_convergence_probe(element, SobolevWeight{0.0}, n_ref, n_list);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double oracle = boost::math::trigamma(static_cast<double>(n_list[i]) + 1.0) -
                          boost::math::trigamma(static_cast<double>(n_ref) + 1.0);
    EXPECT_NEAR(r.residuals[i], oracle, 1e-10) << "n=" << n_list[i];
  }
}

TEST(SchattenProbe, SobolevWeightedIdentity) {
  auto identity = [](std::int64_t l, std::int64_t k) { return Complex(l == k ? 1.0 : 0.0); };
  const Index n_ref = 200;
  const SobolevWeight w{1.0};
  const std::vector<Index> n_list{2, 10, 50, 100};
  const ProbeResult r = schatten_convergence_probe(identity, w, n_ref, n_list);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    double oracle = 0.0;
    for (Index j = n_list[i]; j < n_ref; ++j) {
      oracle += 1.0 / std::sqrt(w(BasisOrdering::mode_of_index(j)));
    }
    EXPECT_NEAR(r.residuals[i], oracle, 1e-10);
  }
  EXPECT_TRUE(r.monotone());
}

TEST(SchattenProbe, RankOneVanishesOnceCovered) {
  auto rank_one = [](std::int64_t l, std::int64_t k) {
    return Complex(l == 0 && k == 0 ? 1.0 : 0.0);
  };
  const std::vector<Index> n_list{1, 2, 8};
  const ProbeResult r = schatten_convergence_probe(rank_one, SobolevWeight{1.0}, 32, n_list);
  for (double v : r.residuals) EXPECT_NEAR(v, 0.0, 1e-14);
}

}  // namespace
}  // namespace zetadisc
