#pragma once

#include <cstddef>
#include <vector>

#include "opineq/matrix_core.hpp"

namespace opineq {

/// Carrier of a finite conjugated module over M_d(C): n slots with positive
/// weights. Unit weights give A^n (and truncations of l²(A)); general weights
/// give a quadrature sample of L²(Ω, A).
struct ModuleContext {
  Eigen::Index dim = 1;
  std::vector<double> weights{1.0};

  static ModuleContext uniform(Eigen::Index dim, std::size_t length);

  std::size_t length() const { return weights.size(); }
  void validate() const;

  bool operator==(const ModuleContext&) const = default;
};

class ModuleElement {
 public:
  /// The zero of the 1×1, single-slot module.
  ModuleElement() : parts_{CMatrix::Zero(1, 1)} {}
  ModuleElement(ModuleContext ctx, std::vector<CMatrix> parts);

  static ModuleElement zero(const ModuleContext& ctx);
  /// Every slot equal to `a`.
  static ModuleElement constant(const ModuleContext& ctx, const CMatrix& a);

  const ModuleContext& ctx() const { return ctx_; }
  const std::vector<CMatrix>& parts() const { return parts_; }
  const CMatrix& operator[](std::size_t t) const { return parts_[t]; }
  Eigen::Index dim() const { return ctx_.dim; }
  std::size_t length() const { return parts_.size(); }
  double weight(std::size_t t) const { return ctx_.weights[t]; }

 private:
  ModuleContext ctx_;
  std::vector<CMatrix> parts_;
};

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y);
ModuleElement operator-(const ModuleElement& x, const ModuleElement& y);
ModuleElement operator*(Complex c, const ModuleElement& x);

void require_same_ctx(const ModuleElement& x, const ModuleElement& y, const char* where);

/// ⟨x, y⟩ = Σ_t w_t x_t* y_t
CMatrix inner(const ModuleElement& x, const ModuleElement& y);

/// x·a = (x_t a)_t
ModuleElement right_mul(const ModuleElement& x, const CMatrix& a);
/// a·x = (a x_t)_t
ModuleElement left_act(const CMatrix& a, const ModuleElement& x);
/// x̄ = (x_t*)_t
ModuleElement conjugate(const ModuleElement& x);

/// ‖x‖ = ‖⟨x,x⟩‖^{1/2}
double module_norm(const ModuleElement& x);

/// The nd×d block column [√w_1 x_1; …; √w_n x_n], so that ⟨x,x⟩ = X* X.
CMatrix stacked(const ModuleElement& x);

/// ⟨x,x⟩^s computed from the singular values of the stacked factor.
CMatrix gram_power(const ModuleElement& x, double s);

struct NormalityResult {
  bool normal = false;
  double defect = 0.0;
  double scale = 1.0;
};

/// Normality: ⟨x,x⟩x = x⟨x,x⟩ slot-wise and ⟨x,x⟩ = ⟨x̄,x̄⟩. The defect is
/// the larger of the two residuals in operator norm.
NormalityResult is_normal(const ModuleElement& x, const ToleranceConfig& cfg = {});

/// Reference vector e with ⟨e,e⟩ = 1 for the Grüss semi-inner product.
class GrussContext {
 public:
  /// Throws NonUnitalE when ⟨e,e⟩ deviates from I by more than tol_rel; the
  /// element is never renormalized.
  explicit GrussContext(ModuleElement e, const ToleranceConfig& cfg = {});

  const ModuleElement& e() const { return e_; }

 private:
  ModuleElement e_;
};

/// Φ(x,y) = ⟨x,y⟩ − ⟨x,e⟩⟨e,y⟩
CMatrix gruss_inner(const ModuleElement& x, const ModuleElement& y, const GrussContext& g);

}  // namespace opineq
