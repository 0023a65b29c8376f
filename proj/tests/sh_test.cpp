// Copyright 2026 The ooDir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oodir/sh.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "support/quadrature.hpp"

namespace oodir {
namespace {

constexpr double kPi = detail::kPi;

TEST(AssocLegendre, BaseCasesAndClosedForms) {
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0})
    EXPECT_DOUBLE_EQ(assoc_legendre(0, 0, x), 1.0);
  EXPECT_DOUBLE_EQ(assoc_legendre(1, 0, 0.5), 0.5);
  EXPECT_NEAR(assoc_legendre(2, 0, 0.5), -0.125, 1e-15);  // (3x^2-1)/2

  for (double x : {-0.9, -0.25, 0.0, 0.4, 0.8}) {
    const double s = std::sqrt(1.0 - x * x);
    // Condon-Shortley phase excluded: P_1^1 = +sqrt(1-x^2).
    EXPECT_NEAR(assoc_legendre(1, 1, x), s, 1e-14);
    EXPECT_NEAR(assoc_legendre(2, 1, x), 3.0 * x * s, 1e-14);
    EXPECT_NEAR(assoc_legendre(2, 2, x), 3.0 * (1.0 - x * x), 1e-14);
    EXPECT_NEAR(assoc_legendre(3, 0, x), 0.5 * (5.0 * x * x * x - 3.0 * x), 1e-14);
    EXPECT_NEAR(assoc_legendre(3, 2, x), 15.0 * x * (1.0 - x * x), 2e-13);
  }
}

TEST(AssocLegendre, DomainErrors) {
  EXPECT_THROW(assoc_legendre(1, 2, 0.0), Error);
  EXPECT_THROW(assoc_legendre(1, -1, 0.0), Error);
  EXPECT_THROW(assoc_legendre(2, 0, 1.5), Error);
  EXPECT_THROW(assoc_legendre(2, 0, std::nan("")), Error);
}

TEST(ShEvalBasis, KnownValues) {
  // Unit-norm constant: 1/(2 sqrt(pi)).
  const double y00 = 1.0 / (2.0 * std::sqrt(kPi));
  EXPECT_NEAR(sh_eval_basis({0, 0}, Direction(0, 0)), y00, 1e-15);
  EXPECT_NEAR(sh_eval_basis({0, 0}, Direction(123, -45)), y00, 1e-15);

  // Y_1^0 at the top pole: sqrt(3/(4 pi)).
  const double y10 = std::sqrt(3.0 / (4.0 * kPi));
  EXPECT_NEAR(sh_eval_basis({1, 0}, Direction(0, 90)), y10, 1e-15);
  EXPECT_NEAR(sh_eval_basis({1, 0}, Direction(0, 90)), 0.4886025, 1e-7);

  // Y_1^1 on the equator toward azimuth 0.
  EXPECT_NEAR(sh_eval_basis({1, 1}, Direction(0, 0)), 0.4886025, 1e-7);
  // Y_1^{-1} peaks toward azimuth 90.
  EXPECT_NEAR(sh_eval_basis({1, -1}, Direction(90, 0)), y10, 1e-14);

  EXPECT_THROW(sh_eval_basis({1, 2}, Direction(0, 0)), Error);
  EXPECT_THROW(sh_eval_basis({-1, 0}, Direction(0, 0)), Error);
}

TEST(ShBasis, CountingAndOrdering) {
  EXPECT_EQ(sh_basis_count(0, 0), 1);
  EXPECT_EQ(sh_basis_count(2, 2), 9);   // (lmax+1)^2
  EXPECT_EQ(sh_basis_count(2, 1), 7);   // 1+3+3
  EXPECT_EQ(sh_basis_count(4, 4), 25);
  EXPECT_THROW(sh_basis_count(2, 3), Error);
  EXPECT_THROW(sh_basis_count(-1, 0), Error);

  const auto idx = sh_basis_indices(2, 1);
  ASSERT_EQ(idx.size(), 7u);
  EXPECT_EQ(idx[0].l, 0);
  EXPECT_EQ(idx[0].m, 0);
  EXPECT_EQ(idx[1].l, 1);
  EXPECT_EQ(idx[1].m, -1);
  EXPECT_EQ(idx[3].l, 1);
  EXPECT_EQ(idx[3].m, 1);
  EXPECT_EQ(idx[4].l, 2);
  EXPECT_EQ(idx[4].m, -1);
  EXPECT_EQ(idx[6].l, 2);
  EXPECT_EQ(idx[6].m, 1);
}

TEST(ShDesignMatrix, ConstantColumnAndShape) {
  std::vector<Direction> dirs = {Direction(0, 0), Direction(45, 30),
                                 Direction(200, -60)};
  const auto A0 = sh_design_matrix(dirs, 0, 0);
  ASSERT_EQ(A0.rows(), 3);
  ASSERT_EQ(A0.cols(), 1);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(A0(i, 0), 0.2820948, 1e-7);

  const auto A = sh_design_matrix(dirs, 2, 1);
  ASSERT_EQ(A.cols(), 7);
  const auto idx = sh_basis_indices(2, 1);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      EXPECT_DOUBLE_EQ(A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                       sh_eval_basis(idx[j], dirs[i]));
}

// Gram matrix over a dense sphere quadrature equals identity.
TEST(ShBasis, Orthonormality) {
  const int lmax = 5;
  const auto quad = testing::sphere_quadrature(24, 48);
  const auto idx = sh_basis_indices(lmax, lmax);
  const std::size_t nb = idx.size();

  Eigen::MatrixXd Y(static_cast<Eigen::Index>(quad.dirs.size()),
                    static_cast<Eigen::Index>(nb));
  for (std::size_t p = 0; p < quad.dirs.size(); ++p)
    for (std::size_t b = 0; b < nb; ++b)
      Y(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(b)) =
          sh_eval_basis(idx[b], quad.dirs[p]);
  Eigen::VectorXd w(static_cast<Eigen::Index>(quad.weights.size()));
  for (std::size_t p = 0; p < quad.weights.size(); ++p)
    w(static_cast<Eigen::Index>(p)) = quad.weights[p];

  const Eigen::MatrixXd gram = Y.transpose() * w.asDiagonal() * Y;
  for (Eigen::Index a = 0; a < gram.rows(); ++a)
    for (Eigen::Index b = 0; b < gram.cols(); ++b)
      EXPECT_NEAR(gram(a, b), a == b ? 1.0 : 0.0, 1e-9)
          << "entry " << a << "," << b;
}

// --- min_norm_lstsq ----------------------------------------------------------

TEST(MinNormLstsq, IdentitySystem) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd B(4, 2);
  B << 1, 2, 3, 4, 5, 6, 7, 8;
  EXPECT_TRUE(min_norm_lstsq(A, B).isApprox(B, 1e-14));
}

TEST(MinNormLstsq, RankDeficientMinimumNorm) {
  Eigen::MatrixXd A(2, 2);
  A << 1, 0, 1, 0;
  Eigen::MatrixXd b(2, 1);
  b << 1, 1;
  const Eigen::MatrixXd x = min_norm_lstsq(A, b);
  EXPECT_NEAR(x(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(x(1, 0), 0.0, 1e-14);  // minimum norm among {[1, t]}
}

TEST(MinNormLstsq, ConsistentSquareSystem) {
  std::mt19937 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd A(5, 5);
  Eigen::MatrixXd X0(5, 3);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) A(i, j) = g(rng);
    for (int j = 0; j < 3; ++j) X0(i, j) = g(rng);
  }
  A += 5.0 * Eigen::MatrixXd::Identity(5, 5);  // keep it well-conditioned
  const Eigen::MatrixXd X = min_norm_lstsq(A, A * X0);
  EXPECT_TRUE(X.isApprox(X0, 1e-12));
}

TEST(MinNormLstsq, UnderdeterminedPicksMinNorm) {
  // One equation, two unknowns: x + y = 2; minimum norm solution is (1, 1).
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  Eigen::MatrixXd b(1, 1);
  b << 2;
  const Eigen::MatrixXd x = min_norm_lstsq(A, b);
  EXPECT_NEAR(x(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(x(1, 0), 1.0, 1e-14);
}

TEST(MinNormLstsq, ShapeErrors) {
  Eigen::MatrixXd A(2, 2);
  A.setIdentity();
  EXPECT_THROW(min_norm_lstsq(A, Eigen::MatrixXd::Zero(3, 1)), Error);
  EXPECT_THROW(min_norm_lstsq(Eigen::MatrixXd(), Eigen::MatrixXd()), Error);
}

// --- fitting -----------------------------------------------------------------

RawDirectivity constant_raw(double level, int n_dirs) {
  const auto dirs = testing::fibonacci_directions(n_dirs);
  std::vector<double> freqs = {500.0, 1000.0};
  std::vector<double> values(dirs.size() * freqs.size(), level);
  return RawDirectivity("const", Coordinates(dirs, freqs, {}),
                        DataGrid(dirs.size(), freqs.size(), 1, values));
}

TEST(ShFit, ZeroDataGivesZeroCoefficients) {
  const auto model = sh_fit(constant_raw(0.0, 64), 3, 3);
  EXPECT_NEAR(model.coeffs().cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(ShFit, ConstantDataLoadsOnlyTheConstantTerm) {
  const auto model = sh_fit(constant_raw(1.0, 100), 4, 4);
  const double c00 = 2.0 * std::sqrt(kPi);  // 1 / Y_0^0
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_NEAR(model.coeff(0, j, 0), c00, 1e-10);
    for (std::size_t b = 1; b < 25; ++b)
      EXPECT_NEAR(model.coeff(b, j, 0), 0.0, 1e-10);
  }
  EXPECT_NEAR(c00, 3.5449077, 1e-7);
}

TEST(ShFit, MetadataAndValidation) {
  const auto raw = constant_raw(1.0, 32);
  const auto model = sh_fit(raw, 2, 2);
  EXPECT_EQ(model.continuity(), (Continuity{true, false, false}));
  EXPECT_EQ(model.info(), "const");  // propagates from the source
  EXPECT_EQ(sh_fit(raw, 2, 2, -40.0, "custom").info(), "custom");
  EXPECT_DOUBLE_EQ(model.min_elev_deg(), -90.0);
  EXPECT_TRUE(model.get_data_coords().dirs().empty());
  EXPECT_EQ(model.get_data_coords().freqs(), raw.coords().freqs());
  EXPECT_THROW(sh_fit(raw, 2, 3), Error);
  EXPECT_THROW(sh_fit(raw, -1, 0), Error);
  EXPECT_THROW(sh_fit(raw, 2, 2, 91.0), Error);
}

// Synthesis-then-fit: data built from random degree-4 coefficients is
// recovered exactly with lmax = 4.
TEST(ShFit, RoundTripRecoversCoefficients) {
  const int lmax = 4;
  const auto idx = sh_basis_indices(lmax, lmax);
  const auto dirs = testing::fibonacci_directions(120);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> coeffs(idx.size());
  for (auto& c : coeffs) c = u(rng);

  std::vector<double> values(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double v = 0.0;
    for (std::size_t b = 0; b < idx.size(); ++b)
      v += coeffs[b] * sh_eval_basis(idx[b], dirs[i]);
    values[i] = v;
  }
  RawDirectivity raw("synth", Coordinates(dirs, {1000.0}, {}),
                     DataGrid(dirs.size(), 1, 1, values));

  const auto model = sh_fit(raw, lmax, lmax);
  for (std::size_t b = 0; b < idx.size(); ++b)
    EXPECT_NEAR(model.coeff(b, 0, 0), coeffs[b], 1e-8);

  // And the fitted model reproduces the data on the training grid.
  const auto [grid, eff] = model.get_data(raw.coords());
  EXPECT_LT(grid_rms_error_db(grid, raw.grid()), 1e-9);
}

TEST(ShFit, ScalingEquivariance) {
  const auto dirs = testing::fibonacci_directions(80);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-20.0, 0.0);
  std::vector<double> values(dirs.size());
  for (auto& v : values) v = u(rng);
  RawDirectivity raw("", Coordinates(dirs, {1000.0}, {}),
                     DataGrid(dirs.size(), 1, 1, values));
  std::vector<double> scaled = values;
  for (auto& v : scaled) v *= 3.0;
  RawDirectivity raw3("", raw.coords(), DataGrid(dirs.size(), 1, 1, scaled));

  const auto m1 = sh_fit(raw, 3, 3);
  const auto m3 = sh_fit(raw3, 3, 3);
  EXPECT_TRUE((3.0 * m1.coeffs()).isApprox(m3.coeffs(), 1e-10));
}

TEST(ShFit, ResidualNonIncreasingInLmax) {
  const auto dirs = testing::fibonacci_directions(100);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-30.0, 10.0);
  std::vector<double> values(dirs.size());
  for (auto& v : values) v = u(rng);
  RawDirectivity raw("", Coordinates(dirs, {1000.0}, {}),
                     DataGrid(dirs.size(), 1, 1, values));

  double prev = std::numeric_limits<double>::infinity();
  for (int lmax = 0; lmax <= 4; ++lmax) {
    const double rms = training_residual_rms_db(sh_fit(raw, lmax, lmax), raw);
    EXPECT_LE(rms, prev + 1e-12);
    prev = rms;
  }
}

TEST(ShGetData, EvaluatesDirectionsExactlyAndCoercesFrequencies) {
  const auto raw = constant_raw(1.0, 64);
  const auto model = sh_fit(raw, 2, 2);

  // Unmeasured direction: finite value from the expansion, direction returned
  // verbatim.
  const Direction probe(12.3, 45.6);
  const auto [grid, eff] = model.get_data(Coordinates({probe}, {777.0}, {}));
  EXPECT_TRUE(std::isfinite(grid.at(0, 0, 0)));
  EXPECT_NEAR(grid.at(0, 0, 0), 1.0, 1e-9);
  EXPECT_TRUE(eff.dirs()[0] == probe);
  EXPECT_DOUBLE_EQ(eff.freqs()[0], 500.0);  // coerced to the nearest stored bin

  EXPECT_THROW(model.get_data(Coordinates({}, {500.0}, {})), Error);
}

TEST(ShModel, TruncatedOrderFitsSubspace) {
  // Synthesize from an mmax-limited coefficient set and refit with the same
  // truncation; sectoral terms above mmax stay out of the model.
  const int lmax = 3, mmax = 1;
  const auto idx = sh_basis_indices(lmax, mmax);
  const auto dirs = testing::fibonacci_directions(90);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> coeffs(idx.size());
  for (auto& c : coeffs) c = u(rng);
  std::vector<double> values(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double v = 0.0;
    for (std::size_t b = 0; b < idx.size(); ++b)
      v += coeffs[b] * sh_eval_basis(idx[b], dirs[i]);
    values[i] = v;
  }
  RawDirectivity raw("", Coordinates(dirs, {1000.0}, {}),
                     DataGrid(dirs.size(), 1, 1, values));
  const auto model = sh_fit(raw, lmax, mmax);
  ASSERT_EQ(model.coeffs().rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t b = 0; b < idx.size(); ++b)
    EXPECT_NEAR(model.coeff(b, 0, 0), coeffs[b], 1e-9);
  EXPECT_LT(training_residual_rms_db(model, raw), 1e-10);
}

}  // namespace
}  // namespace oodir
