#include <gtest/gtest.h>

#include <limits>

#include "opineq/generators.hpp"
#include "opineq/uinorms.hpp"
#include "oracles.hpp"

using namespace opineq;

namespace {

CMatrix diag(std::initializer_list<double> v) {
  RVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

CMatrix nilpotent(double c) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = c;
  return m;
}

}  // namespace

TEST(SingularValues, DiagonalWithSign) {
  const RVector s = singular_values(diag({3, -5}));
  EXPECT_NEAR(s(0), 5, 1e-14);
  EXPECT_NEAR(s(1), 3, 1e-14);
}

TEST(SingularValues, RankOne) {
  const RVector s = singular_values(nilpotent(2));
  EXPECT_NEAR(s(0), 2, 1e-14);
  EXPECT_NEAR(s(1), 0, 1e-14);
}

TEST(SingularValues, AdjointHasSameList) {
  const CMatrix m = oracle::gaussian(8, 5);
  EXPECT_LE((singular_values(m) - singular_values(m.adjoint())).norm(), 1e-12);
}

TEST(Norm, PythagoreanSchatten2) { EXPECT_NEAR(norm(diag({3, 4}), NormKind::schatten(2)), 5, 1e-14); }

TEST(Norm, TraceOfRankOne) { EXPECT_NEAR(norm(nilpotent(1), NormKind::trace()), 1, 1e-14); }

TEST(Norm, KyFanDualFormula) { EXPECT_NEAR(norm(diag({2, 1, 1}), NormKind::ky_fan_dual(2)), 2, 1e-14); }

TEST(Norm, SchattenInfinityIsOperator) {
  const CMatrix m = oracle::gaussian(2, 4);
  EXPECT_NEAR(norm(m, NormKind::schatten(std::numeric_limits<double>::infinity())),
              norm(m, NormKind::operator_norm()), 1e-14);
}

TEST(Norm, HilbertSchmidtIsFrobenius) {
  const CMatrix m = oracle::gaussian(3, 4);
  EXPECT_NEAR(norm(m, NormKind::hilbert_schmidt()), m.norm(), 1e-12);
}

TEST(Norm, InvalidK) {
  try {
    norm(diag({1, 2}), NormKind::ky_fan(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidK);
  }
}

TEST(Norm, SchattenBelowOneRejected) {
  EXPECT_THROW(norm(diag({1, 2}), NormKind::schatten(0.5)), Error);
}

TEST(Norm, Names) {
  EXPECT_EQ(NormKind::ky_fan(2).name(), "ky_fan_2");
  EXPECT_EQ(NormKind::schatten(3).name(), "schatten_3");
  EXPECT_EQ(NormKind::trace().name(), "trace");
}

TEST(FanDominance, ZeroIsDominated) {
  const DominanceResult r = fan_dominance_leq(CMatrix::Zero(3, 3), oracle::gaussian(1, 3));
  EXPECT_TRUE(r.holds);
  EXPECT_GE(r.margin, 0.0);
}

TEST(FanDominance, RearrangementInvariant) {
  const DominanceResult r = fan_dominance_leq(diag({1, 2}), diag({2, 1}));
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.margin, 0.0, 1e-14);
}

TEST(FanDominance, FirstOrderFails) {
  const DominanceResult r = fan_dominance_leq(diag({3, 0}), diag({2, 2}));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.worst_k, 1);
  EXPECT_NEAR(r.margin, -1.0, 1e-14);
}

TEST(DualPairing, TraceOfDiagonal) { EXPECT_NEAR(dual_pairing_check(diag({2, 3}), NormKind::trace()), 5, 1e-14); }

TEST(DualPairing, OperatorOfRankOne) {
  EXPECT_NEAR(dual_pairing_check(nilpotent(1), NormKind::operator_norm()), 1, 1e-14);
}

TEST(DualPairing, UnitaryTrace) {
  EXPECT_NEAR(dual_pairing_check(gen_haar_unitary(4, 6), NormKind::trace()), 6, 1e-12);
}

TEST(DualPairing, OtherKindsRejected) {
  EXPECT_THROW(dual_pairing_check(diag({1, 1}), NormKind::schatten(2)), Error);
}
