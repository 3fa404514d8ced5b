#pragma once

#include <string>
#include <vector>

#include "opineq/matrix_core.hpp"

namespace opineq {

/// A unitarily invariant norm, identified by its symmetric gauge function.
struct NormKind {
  enum class Tag { Operator, Trace, Schatten, HilbertSchmidt, KyFan, KyFanDual };

  Tag tag = Tag::Operator;
  double p = 0.0;  // Schatten exponent; +inf is accepted and means Operator
  int k = 0;       // Ky Fan order, 1-based

  static NormKind operator_norm() { return {Tag::Operator, 0.0, 0}; }
  static NormKind trace() { return {Tag::Trace, 0.0, 0}; }
  static NormKind hilbert_schmidt() { return {Tag::HilbertSchmidt, 0.0, 0}; }
  static NormKind schatten(double p) { return {Tag::Schatten, p, 0}; }
  static NormKind ky_fan(int k) { return {Tag::KyFan, 0.0, k}; }
  static NormKind ky_fan_dual(int k) { return {Tag::KyFanDual, 0.0, k}; }

  /// Stable identifier used as a key in report details, e.g. "ky_fan_2".
  std::string name() const;
};

/// Singular values in descending order.
RVector singular_values(const CMatrix& m);

double norm(const CMatrix& m, const NormKind& kind);
double norm_from_singular_values(const RVector& sigma, const NormKind& kind);

/// Partial sums σ1, σ1+σ2, ..., Σσ: every Ky Fan norm at once.
RVector ky_fan_norms(const CMatrix& m);

struct DominanceResult {
  bool holds = false;
  int worst_k = 1;       // 1-based order with the smallest margin
  double margin = 0.0;   // ‖B‖_(k) - ‖A‖_(k) at worst_k
  double scale = 1.0;    // max(‖A‖_(k), ‖B‖_(k), 1) at worst_k
  RVector margins;       // per-k margins, index k-1
};

/// Fan dominance A ≼ B: ‖A‖_(k) ≤ ‖B‖_(k) for every k, which implies
/// |||A||| ≤ |||B||| in every unitarily invariant norm. The worst order is the
/// one with the smallest margin relative to its own scale.
DominanceResult fan_dominance_leq(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg = {});

/// Evaluates |tr(m y)| at the explicit norming functional for the
/// trace/operator duality: y = V U* for Trace and y = v1 u1* for Operator,
/// where m = U Σ V*.
double dual_pairing_check(const CMatrix& m, const NormKind& kind);

}  // namespace opineq
