#pragma once

#include <span>

#include "opineq/hilbert_module.hpp"

namespace opineq {

inline constexpr Eigen::Index kDefaultVectorizeCap = 1024;

/// T_{x,y}: a ↦ ⟨x, a y⟩ = Σ_t w_t x_t* a y_t.
///
/// With unit weights this is the elementary operator a ↦ Σ x_j* a y_j; with
/// quadrature weights it is a discretized inner-product-type transformer.
class ElementaryOperator {
 public:
  ElementaryOperator(ModuleElement x, ModuleElement y);

  const ModuleElement& x() const { return x_; }
  const ModuleElement& y() const { return y_; }
  Eigen::Index dim() const { return x_.dim(); }

  /// ‖x‖·‖y‖, the a-priori bound on ‖T‖ used for series truncation.
  double gamma() const { return gamma_; }

 private:
  ModuleElement x_;
  ModuleElement y_;
  double gamma_;
};

CMatrix apply(const ElementaryOperator& t, const CMatrix& a);

/// k-fold iterate T^k a. Equals ⟨x^{⊗k}, a y^{⊗k}⟩ on the k-th interior
/// tensor power, which is never materialized.
CMatrix power_apply(const ElementaryOperator& t, const CMatrix& a, int k);

/// d²×d² matrix of T acting on column-stacked arguments:
/// rep = Σ_t w_t (y_tᵀ ⊗ x_t*).
struct VectorizedOperator {
  Eigen::Index dim = 0;
  CMatrix rep;

  CMatrix apply(const CMatrix& a) const;
};

VectorizedOperator vectorize(const ElementaryOperator& t, Eigen::Index cap = kDefaultVectorizeCap);

/// max |λ| over the spectrum of the vectorized representation.
double spectral_radius(const ElementaryOperator& t, Eigen::Index cap = kDefaultVectorizeCap);

struct OperatorNormBounds {
  double lower = 0.0;  // max ‖T a‖/‖a‖ over the probes (and a = I)
  double upper = 0.0;  // ‖x‖‖y‖
  CMatrix best_probe;
};

/// Bounds on ‖T‖ as a map on (M_d, operator norm). The identity is always
/// probed in addition to `probes`.
OperatorNormBounds operator_norm_T(const ElementaryOperator& t, std::span<const CMatrix> probes,
                                   Eigen::Index cap = kDefaultVectorizeCap);

struct SeriesResult {
  CMatrix value;
  int terms_used = 0;
};

/// (I − T)^{-1} a = Σ_k T^k a, truncated once ‖a‖γ^{N+1}/(1−γ) ≤ series_tail‖a‖.
SeriesResult neumann_inverse(const ElementaryOperator& t, const CMatrix& a, const ToleranceConfig& cfg = {});

/// (I − T)^{-1} a by a dense LU solve on the vectorized representation.
/// Requires only that 1 is not an eigenvalue of T.
CMatrix direct_inverse(const ElementaryOperator& t, const CMatrix& a, Eigen::Index cap = kDefaultVectorizeCap);

/// (I − T)^α a = Σ_n (−1)^n C(α,n) T^n a for α > 0.
SeriesResult fractional_power_apply(const ElementaryOperator& t, double alpha, const CMatrix& a,
                                    const ToleranceConfig& cfg = {});

/// Σ_n ⟨z^{⊗n}, z^{⊗n}⟩ = (I − T_{z,z})^{-1}(1).
///
/// Summed as a Neumann series when ‖z‖ < 1 and the series fits in max_terms;
/// otherwise, provided the spectral radius of T_{z,z} is below one, by the
/// direct solve.
CMatrix fock_gram(const ModuleElement& z, const ToleranceConfig& cfg = {});

/// Δ_z = (Σ_n ⟨z^{⊗n}, z^{⊗n}⟩)^{-1/2}. For normal z this is (1 − ⟨z,z⟩)^{1/2}.
CMatrix defect_operator(const ModuleElement& z, const ToleranceConfig& cfg = {});

}  // namespace opineq
