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

#include <cmath>
#include <numbers>
#include <vector>

#include "test_support.hpp"

namespace zetadisc {
namespace {

using testing::hydrogen;
using testing::hydrogen_matrix;
using testing::position;

HermitianOperator diagonal(std::initializer_list<double> values) {
  CMatrix m = CMatrix::Zero(Index(values.size()), Index(values.size()));
  Index j = 0;
  for (double v : values) m(j, j) = v, ++j;
  return HermitianOperator(m);
}

TEST(GaugeRatio, HamiltonianAtZeroIsReferenceMinimum) {
  const HermitianOperator h = hydrogen_matrix(2);
  const ZetaRatioSample s = gauge_ratio(h, h, 0.0);
  EXPECT_NEAR(s.ratio.real(), testing::kReferenceMinima[0], 1e-11);
  EXPECT_NEAR(std::abs(s.denominator - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.ratio * s.denominator - s.numerator), 0.0, 1e-12);
}

TEST(GaugeRatio, IdentityObservableGivesOne) {
  const HermitianOperator h = hydrogen_matrix(8);
  const HermitianOperator id(CMatrix::Identity(8, 8));
  for (Complex z : {Complex(0.0), Complex(-1.5, 0.3), Complex(0.7, -2.0)}) {
    EXPECT_NEAR(std::abs(gauge_ratio(h, id, z).ratio - 1.0), 0.0, 1e-12) << z;
  }
}

TEST(GaugeRatio, SpectralSumOracle) {
  const HermitianOperator h = hydrogen_matrix(4);
  const EigenSystem e = eig_hermitian(h);
  const CVector psi = vacuum_state(h).state;
  const CVector c = e.vectors.adjoint() * psi;
  for (Complex z : {Complex(-1.0), Complex(-0.4, 0.9)}) {
    Complex num(0.0), den(0.0);
    for (Index j = 0; j < 4; ++j) {
      const double lambda = e.eigenvalues(j);
      num += std::norm(c(j)) * std::pow(Complex(lambda), z + 1.0);
      den += std::norm(c(j)) * std::pow(Complex(lambda), z);
    }
    EXPECT_NEAR(std::abs(gauge_ratio(h, h, z).ratio - num / den), 0.0, 1e-12) << z;
  }
}

TEST(GaugeRatio, ValueAtZeroIsExpectation) {
  for (Index n : {2, 7, 32, 128}) {
    const HermitianOperator h = hydrogen_matrix(n);
    const HermitianOperator x = project_operator(position(), n);
    const double direct = expectation(vacuum_state(h).state, x);
    const double r = gauge_ratio(h, x, 0.0).ratio.real();
    EXPECT_NEAR(r, direct, 1e-10 * std::max(1.0, std::abs(direct))) << n;
  }
}

TEST(GaugeRatio, ExplicitGaugeMatrixAgrees) {
  // Dual route: materialize G(z) and contract directly.
  const HermitianOperator h = hydrogen_matrix(6);
  const HermitianOperator x = project_operator(position(), 6);
  const DiscreteGauge g(h);
  const Complex z(-0.8, 0.6);
  const CVector psi = g.vacuum();
  const CMatrix gz = g(z);
  const Complex num = psi.dot(gz * x.matrix() * psi);
  const Complex den = psi.dot(gz * psi);
  EXPECT_NEAR(std::abs(g.ratio(x, z).ratio - num / den), 0.0, 1e-12);
}

TEST(GaugeRatio, Errors) {
  try {
    gauge_ratio(diagonal({-1.0, 2.0}), diagonal({1.0, 1.0}), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveSpectrum);
  }
  const DiscreteGauge vanishing(diagonal({1.0, 2.0}), [](double, Complex) { return Complex(0.0); });
  try {
    vanishing.ratio(diagonal({1.0, 1.0}), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DenominatorNearZero);
  }
  EXPECT_THROW(gauge_ratio(diagonal({1.0, 2.0}), diagonal({1.0, 2.0, 3.0}), 0.0), Error);
}

TEST(CauchyCenterValue, HolomorphyProxy) {
  const HermitianOperator h = hydrogen_matrix(16);
  const HermitianOperator x = project_operator(position(), 16);
  const DiscreteGauge g(h);
  for (Complex z0 : {Complex(0.0), Complex(-1.0, 0.5), Complex(0.5, -1.0)}) {
    const Complex center = g.ratio(x, z0).ratio;
    const Complex contour =
        cauchy_center_value([&](Complex z) { return g.ratio(x, z).ratio; }, z0, 0.1);
    EXPECT_NEAR(std::abs(contour - center), 0.0, 1e-6) << z0;
  }
  // Oracle on a known holomorphic function.
  const Complex v = cauchy_center_value([](Complex z) { return std::exp(z) * z; }, {0.3, 0.2}, 0.1);
  EXPECT_NEAR(std::abs(v - std::exp(Complex(0.3, 0.2)) * Complex(0.3, 0.2)), 0.0, 1e-13);
}

TEST(DampedTraceRatio, TwoLevelClosedForm) {
  const double eps = 0.1;
  for (double t : {0.5, 3.0, 20.0, 200.0}) {
    const Complex r = damped_trace_ratio(diagonal({1.0, 2.0}), diagonal({10.0, 20.0}), 0.0, t, eps);
    const Complex q = std::exp(Complex(-eps * t, -t));
    EXPECT_NEAR(std::abs(r - (10.0 + 20.0 * q) / (1.0 + q)), 0.0, 1e-12) << t;
  }
  const Complex r = damped_trace_ratio(diagonal({1.0, 2.0}), diagonal({10.0, 20.0}), 0.0, 200.0, eps);
  EXPECT_NEAR(std::abs(r - 10.0), 0.0, 1e-6);
}

TEST(DampedTraceRatio, ZeroTimeIsGaugedTraceRatio) {
  const HermitianOperator h = hydrogen_matrix(5);
  const HermitianOperator x = project_operator(position(), 5);
  const Complex z(-0.5, 0.25);
  const DiscreteGauge g(h);
  const CMatrix gz = g(z);
  const Complex oracle = (gz * x.matrix()).trace() / gz.trace();
  EXPECT_NEAR(std::abs(damped_trace_ratio(h, x, z, 0.0, 0.05) - oracle), 0.0, 1e-12);
}

TEST(DampedTraceRatio, HydrogenLongTime) {
  const HermitianOperator h = hydrogen_matrix(4);
  const Complex r = damped_trace_ratio(h, h, 0.0, 2000.0, 0.05);
  EXPECT_NEAR(std::abs(r - testing::kReferenceMinima[1]), 0.0, 1e-6);
}

TEST(DampedTraceRatio, DeviationRouteMatchesPlainDifference) {
  const HermitianOperator h = hydrogen_matrix(16);
  const HermitianOperator x = project_operator(position(), 16);
  const DiscreteGauge g(h);
  const double ground = expectation(g.vacuum(), x);
  for (double t : {0.0, 1.0, 5.0, 20.0, 60.0}) {
    const Complex plain = g.damped_trace_ratio(x, 0.0, t, 0.05) - ground;
    const Complex dev = g.damped_trace_deviation(x, 0.0, t, 0.05);
    EXPECT_NEAR(std::abs(plain - dev), 0.0, 1e-12) << t;
  }
}

TEST(DampedTraceRatio, LogErrorSlopeIsDampedGap) {
  const HermitianOperator h = hydrogen_matrix(16);
  const DiscreteGauge g(h);
  const double eps = 0.05;
  const double gap = g.system().eigenvalues(1) - g.system().eigenvalues(0);
  std::vector<double> ts, logs;
  for (double t = 100.0; t <= 400.0; t += 50.0) {
    ts.push_back(t);
    logs.push_back(std::log(std::abs(g.damped_trace_deviation(h, 0.0, t, eps))));
  }
  const double slope = (logs.back() - logs.front()) / (ts.back() - ts.front());
  EXPECT_NEAR(slope, -eps * gap, 0.2 * eps * gap);
}

TEST(DampedTraceRatio, Arguments) {
  const HermitianOperator h = diagonal({1.0, 2.0});
  EXPECT_THROW(damped_trace_ratio(h, h, 0.0, 1.0, 0.0), Error);
  EXPECT_THROW(damped_trace_ratio(h, h, 0.0, -1.0, 0.1), Error);
  EXPECT_THROW(damped_trace_ratio(diagonal({-1.0, 2.0}), h, 0.0, 1.0, 0.1), Error);
}

TEST(DenominatorZeroScan, NoZerosForPowerGauge) {
  const ZGrid small = ZGrid::rectangle(-0.5, 0.5, 11, -0.5, 0.5, 11);
  EXPECT_TRUE(denominator_zero_scan(diagonal({1.0, 1.0}), small).empty());
  const ZGrid grid = ZGrid::rectangle(-3.0, 1.0, 41, -2.0, 2.0, 41);
  EXPECT_EQ(grid.points().size(), 41u * 41u);
  EXPECT_TRUE(denominator_zero_scan(hydrogen_matrix(16), grid).empty());
  const DiscreteGauge g(hydrogen_matrix(16));
  EXPECT_NEAR(std::abs(g.denominator(0.0) - 1.0), 0.0, 1e-12);
}

TEST(DenominatorZeroScan, CustomGaugeZerosAreRecordedAndExcluded) {
  // g(lambda, z) = z: the denominator is z itself, zero only at the origin.
  const DiscreteGauge g(diagonal({1.0, 2.0}), [](double, Complex z) { return z; });
  const ZGrid grid = ZGrid::rectangle(-1.0, 1.0, 5, -1.0, 1.0, 5);
  const std::vector<Complex> zeros = denominator_zero_scan(g, grid);
  ASSERT_EQ(zeros.size(), 1u);
  EXPECT_EQ(zeros[0], Complex(0.0));
  const ZGrid kept = grid.excluding(zeros, 0.6);
  EXPECT_EQ(kept.points().size(), 20u);
  EXPECT_EQ(kept.zeros().size(), 1u);
  EXPECT_DOUBLE_EQ(kept.exclusion_radius(), 0.6);
}

TEST(ZGrid, RejectsDuplicates) {
  EXPECT_THROW(ZGrid({Complex(0.0), Complex(1.0), Complex(0.0)}), Error);
}

TEST(RatioConvergenceScan, HamiltonianResidualsAreEnergyDifferences) {
  const std::vector<Index> n_list{2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
  const RatioScan scan = ratio_convergence_scan(hydrogen(), hydrogen(), ZGrid({0.0}), n_list);
  ASSERT_EQ(scan.per_step_residual.size(), n_list.size() - 1);
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
    const double e0 = vacuum_state(hydrogen_matrix(n_list[i])).energy;
    const double e1 = vacuum_state(hydrogen_matrix(n_list[i + 1])).energy;
    EXPECT_NEAR(scan.per_step_residual[i], std::abs(e1 - e0), 1e-10) << n_list[i];
  }
  EXPECT_TRUE(scan.decreasing());
}

TEST(RatioConvergenceScan, IdentityHasNoResidual) {
  auto identity = [](std::int64_t l, std::int64_t k) { return Complex(l == k ? 1.0 : 0.0); };
  const std::vector<Index> n_list{4, 8, 16};
  const RatioScan scan =
      ratio_convergence_scan(hydrogen(), identity, ZGrid({0.0, Complex(-1.0, 0.5)}), n_list);
  for (double r : scan.per_z_residual) EXPECT_LE(r, 1e-12);
}

TEST(RatioConvergenceScan, PositionTrendsToFineReference) {
  const std::vector<Index> n_list{8, 16, 32, 64, 128, 256};
  const ZGrid grid({0.0, -1.0, Complex(-1.0, 0.5)});
  const RatioScan scan = ratio_convergence_scan(hydrogen(), position(), grid, n_list);
  EXPECT_TRUE(scan.decreasing());
  const DiscreteGauge fine(hydrogen_matrix(512));
  const HermitianOperator x512 = project_operator(position(), 512);
  for (std::size_t p = 0; p < grid.points().size(); ++p) {
    const Complex ref = fine.ratio(x512, grid.points()[p]).ratio;
    const double first = std::abs(scan.ratios.front()[p] - ref);
    const double last = std::abs(scan.ratios.back()[p] - ref);
    EXPECT_LT(last, first) << grid.points()[p];
  }
}

TEST(RatioConvergenceScan, Arguments) {
  const std::vector<Index> two{4, 8};
  EXPECT_THROW(ratio_convergence_scan(hydrogen(), hydrogen(), ZGrid({0.0}), two), Error);
  const std::vector<Index> unsorted{8, 4, 16};
  EXPECT_THROW(ratio_convergence_scan(hydrogen(), hydrogen(), ZGrid({0.0}), unsorted), Error);
}

}  // namespace
}  // namespace zetadisc
