#include <gtest/gtest.h>

#include <cmath>

#include "opineq/matrix_core.hpp"
#include "oracles.hpp"

using namespace opineq;

namespace {

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CMatrix random_psd(std::uint64_t seed, Eigen::Index d) {
  const CMatrix g = oracle::gaussian(seed, d);
  return g * g.adjoint();
}

}  // namespace

TEST(Adjoint, RealTranspose) {
  EXPECT_EQ(adjoint(m2(0, 1, 0, 0)), m2(0, 0, 1, 0));
}

TEST(Adjoint, ConjugatesDiagonal) {
  const Complex i(0, 1);
  EXPECT_EQ(adjoint(m2(i, 0, 0, -i)), m2(-i, 0, 0, i));
}

TEST(Adjoint, InvolutionIsExact) {
  const CMatrix m = oracle::gaussian(11, 5);
  EXPECT_EQ(adjoint(adjoint(m)), m);
}

TEST(HermEig, DiagonalInput) {
  const HermEig e = herm_eig(m2(3, 0, 0, 1));
  EXPECT_NEAR(e.values(0), 1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 3.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 0)), 0.0, 1e-14);  // permutation
}

TEST(HermEig, TwoByTwoClosedForm) {
  const HermEig e = herm_eig(m2(2, 1, 1, 2));
  EXPECT_NEAR(e.values(0), 1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 3.0, 1e-14);
  // eigenvectors (1,-1)/√2 and (1,1)/√2 up to phase
  EXPECT_NEAR(std::abs(e.vectors(0, 0) + e.vectors(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 1) - e.vectors(1, 1)), 0.0, 1e-14);
}

TEST(HermEig, IdentityReconstructs) {
  const HermEig e = herm_eig(identity(4));
  EXPECT_TRUE(e.values.isApprox(RVector::Ones(4)));
  const CMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_LE((back - identity(4)).norm(), 1e-14);
}

TEST(HermEig, RejectsNonHermitian) {
  try {
    herm_eig(m2(0, 1, 0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(PsdPower, DiagonalSquareRoot) {
  EXPECT_LE((psd_power(m2(4, 0, 0, 9), 0.5) - m2(2, 0, 0, 3)).norm(), 1e-14);
}

TEST(PsdPower, TwoByTwoSquareRoot) {
  const double s3 = std::sqrt(3.0);
  const CMatrix expected = m2((s3 + 1) / 2, (s3 - 1) / 2, (s3 - 1) / 2, (s3 + 1) / 2);
  const CMatrix root = psd_power(m2(2, 1, 1, 2), 0.5);
  EXPECT_LE((root - expected).norm(), 1e-14);
  EXPECT_LE((root * root - m2(2, 1, 1, 2)).norm(), 1e-13);
}

TEST(PsdPower, IdentityIsFixed) {
  for (double s : {-2.0, -0.5, 0.0, 0.3, 1.0, 7.0}) EXPECT_LE((psd_power(identity(3), s) - identity(3)).norm(), 1e-14);
}

TEST(PsdPower, ZeroAndOneExponents) {
  const CMatrix h = random_psd(3, 4);
  EXPECT_EQ(psd_power(h, 0.0), identity(4));
  EXPECT_LE((psd_power(h, 1.0) - h).norm(), 1e-12 * h.norm());
}

TEST(PsdPower, ClampsRoundoffNegatives) {
  const CMatrix h = m2(1, 0, 0, -1e-15);
  EXPECT_LE((psd_power(h, 0.5) - m2(1, 0, 0, 0)).norm(), 1e-14);
}

TEST(PsdPower, RejectsIndefinite) {
  try {
    psd_power(m2(1, 0, 0, -0.5), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPSD);
  }
}

TEST(PsdPower, SingularNegativePower) {
  try {
    psd_power(m2(1, 0, 0, 0), -0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularNegativePower);
  }
}

TEST(RegularizedInvPower, Diagonal) {
  EXPECT_LE((regularized_inv_power(m2(3, 0, 0, 0), 1.0, 1.0) - m2(0.25, 0, 0, 1)).norm(), 1e-14);
}

TEST(RegularizedInvPower, ZeroMatrix) {
  EXPECT_LE((regularized_inv_power(CMatrix::Zero(3, 3), 0.5, 1e-4) - 100.0 * identity(3)).norm(), 1e-10);
}

TEST(RegularizedInvPower, SquareRootPerturbationBound) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CMatrix h = random_psd(seed, 4);
    const double eps = 1e-3;
    const CMatrix shifted = psd_power(h + eps * identity(4), 0.5);
    EXPECT_LE(op_norm(shifted - psd_power(h, 0.5)), std::sqrt(eps) + 1e-12);
  }
}

TEST(MatrixAbs, RankOne) {
  EXPECT_LE((matrix_abs(m2(0, 1, 0, 0)) - m2(0, 0, 0, 1)).norm(), 1e-14);
}

TEST(MatrixAbs, PsdIsFixed) {
  const CMatrix h = random_psd(5, 3);
  EXPECT_LE((matrix_abs(h) - h).norm(), 1e-12 * h.norm());
}

TEST(MatrixAbs, UnitaryGivesIdentity) {
  EXPECT_LE((matrix_abs(gen_haar_unitary(9, 5)) - identity(5)).norm(), 1e-13);
}

TEST(GramPower, MatchesExplicitOnWellConditioned) {
  const CMatrix b = oracle::gaussian(21, 4);
  EXPECT_LE(oracle::rel_diff(gram_power(b, 0.5), psd_power(b * b.adjoint(), 0.5)), 1e-12);
  EXPECT_LE(oracle::rel_diff(gram_power(b, -1.0, 0.1), regularized_inv_power(b * b.adjoint(), 1.0, 0.1)), 1e-12);
}

TEST(GramPower, KeepsRelativeAccuracyOnGradedFactor) {
  // B = diag(1, 1e-9): the formed Gram matrix would lose the small entry
  const CMatrix b = m2(1, 0, 0, 1e-9);
  const CMatrix r = gram_power(b, 0.25);
  EXPECT_NEAR(r(1, 1).real(), std::pow(1e-18, 0.25), 1e-20);
}

TEST(PsdOrder, ZeroBelowIdentity) {
  const OrderResult r = psd_order_leq(CMatrix::Zero(2, 2), identity(2));
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.margin, 1.0, 1e-14);
}

TEST(PsdOrder, IncomparablePair) {
  const OrderResult r = psd_order_leq(m2(1, 0, 0, 2), m2(2, 0, 0, 1));
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(r.margin, -1.0, 1e-14);
}

TEST(PsdOrder, DimMismatch) {
  try {
    psd_order_leq(identity(2), identity(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(Vec, RoundTrip) {
  const CMatrix m = oracle::gaussian(4, 3);
  EXPECT_EQ(unvec(vec(m), 3), m);
  EXPECT_EQ(vec(m)(1), m(1, 0));  // column stacking
}

TEST(Tolerance, Validates) {
  ToleranceConfig cfg;
  cfg.max_terms = 0;
  EXPECT_THROW(cfg.validate(), Error);
}
