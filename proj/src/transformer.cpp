#include "opineq/transformer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace opineq {

ElementaryOperator::ElementaryOperator(ModuleElement x, ModuleElement y) : x_(std::move(x)), y_(std::move(y)) {
  require_same_ctx(x_, y_, "ElementaryOperator");
  gamma_ = module_norm(x_) * module_norm(y_);
}

CMatrix apply(const ElementaryOperator& t, const CMatrix& a) {
  if (a.rows() != t.dim() || a.cols() != t.dim()) throw Error(ErrorCode::DimMismatch, "apply");
  const ModuleElement& x = t.x();
  const ModuleElement& y = t.y();
  CMatrix acc = CMatrix::Zero(t.dim(), t.dim());
  for (std::size_t s = 0; s < x.length(); ++s) acc.noalias() += x.weight(s) * (x[s].adjoint() * a * y[s]);
  return acc;
}

CMatrix power_apply(const ElementaryOperator& t, const CMatrix& a, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidSpec, "power must be >= 0");
  CMatrix out = a;
  for (int i = 0; i < k; ++i) out = opineq::apply(t, out);
  return out;
}

CMatrix VectorizedOperator::apply(const CMatrix& a) const { return unvec(rep * vec(a), dim); }

VectorizedOperator vectorize(const ElementaryOperator& t, Eigen::Index cap) {
  const Eigen::Index d = t.dim();
  const Eigen::Index n2 = d * d;
  if (n2 > cap) throw Error(ErrorCode::DimCap, "d^2 = " + std::to_string(n2) + " exceeds cap");
  VectorizedOperator out{d, CMatrix::Zero(n2, n2)};
  for (std::size_t s = 0; s < t.x().length(); ++s) {
    const CMatrix xs = t.x()[s].adjoint();
    const CMatrix& ys = t.y()[s];
    const double w = t.x().weight(s);
    // vec(A X B) = (Bᵀ ⊗ A) vec(X); block (i, j) of the Kronecker product is B(j, i)·A
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) out.rep.block(i * d, j * d, d, d) += (w * ys(j, i)) * xs;
  }
  return out;
}

double spectral_radius(const ElementaryOperator& t, Eigen::Index cap) {
  const VectorizedOperator v = vectorize(t, cap);
  Eigen::ComplexEigenSolver<CMatrix> es(v.rep, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

OperatorNormBounds operator_norm_T(const ElementaryOperator& t, std::span<const CMatrix> probes, Eigen::Index cap) {
  if (t.dim() * t.dim() > cap) throw Error(ErrorCode::DimCap, "operator_norm_T");
  OperatorNormBounds out;
  out.upper = t.gamma();
  auto consider = [&](const CMatrix& a) {
    const double denom = op_norm(a);
    if (denom == 0.0) return;
    const double ratio = op_norm(opineq::apply(t, a)) / denom;
    if (ratio > out.lower || out.best_probe.size() == 0) {
      out.lower = std::max(out.lower, ratio);
      out.best_probe = a;
    }
  };
  consider(identity(t.dim()));
  for (const CMatrix& a : probes) consider(a);
  return out;
}

SeriesResult neumann_inverse(const ElementaryOperator& t, const CMatrix& a, const ToleranceConfig& cfg) {
  const double gamma = t.gamma();
  if (!(gamma < 1.0)) throw Error(ErrorCode::NotContractive, "‖x‖‖y‖ = " + std::to_string(gamma));
  int terms = 1;
  if (gamma > 0.0) {
    // smallest N with γ^{N+1}/(1−γ) ≤ tail; terms = N + 1
    const double needed = std::log(cfg.series_tail * (1.0 - gamma)) / std::log(gamma);
    terms = std::max(1, static_cast<int>(std::ceil(needed)));
  }
  if (terms > cfg.max_terms)
    throw Error(ErrorCode::MaxTermsExceeded, std::to_string(terms) + " terms needed");
  SeriesResult out{a, terms};
  CMatrix term = a;
  for (int k = 1; k < terms; ++k) {
    term = opineq::apply(t, term);
    out.value += term;
  }
  return out;
}

CMatrix direct_inverse(const ElementaryOperator& t, const CMatrix& a, Eigen::Index cap) {
  const VectorizedOperator v = vectorize(t, cap);
  const CMatrix system = CMatrix::Identity(v.rep.rows(), v.rep.cols()) - v.rep;
  return unvec(system.partialPivLu().solve(vec(a)), t.dim());
}

SeriesResult fractional_power_apply(const ElementaryOperator& t, double alpha, const CMatrix& a,
                                    const ToleranceConfig& cfg) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidSpec, "alpha must be > 0");
  const double gamma = t.gamma();
  if (!(gamma < 1.0)) throw Error(ErrorCode::NotContractive, "‖x‖‖y‖ = " + std::to_string(gamma));

  // c_n = (−1)^n C(α, n);  c_{n+1} = c_n (n − α)/(n + 1)
  SeriesResult out{CMatrix::Zero(a.rows(), a.cols()), 0};
  CMatrix term = a;
  double coeff = 1.0;
  double gamma_pow = 1.0;
  for (int n = 0;; ++n) {
    if (n >= cfg.max_terms) throw Error(ErrorCode::MaxTermsExceeded, "fractional power series");
    out.value += coeff * term;
    out.terms_used = n + 1;
    const double next = coeff * (n - alpha) / (n + 1);
    gamma_pow *= gamma;
    if (next == 0.0 || gamma == 0.0) break;
    // |c_m| is nonincreasing once m > α, so the remaining tail is bounded
    // by |c_{n+1}| γ^{n+1} / (1 − γ)
    if (n + 1 > alpha && std::abs(next) * gamma_pow / (1.0 - gamma) <= cfg.series_tail) break;
    coeff = next;
    term = opineq::apply(t, term);
  }
  return out;
}

CMatrix fock_gram(const ModuleElement& z, const ToleranceConfig& cfg) {
  const ElementaryOperator t(z, z);
  const CMatrix one = identity(z.dim());
  if (t.gamma() < 1.0) {
    try {
      return hermitian_part(neumann_inverse(t, one, cfg).value);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MaxTermsExceeded) throw;
    }
  }
  const double radius = spectral_radius(t);
  if (!(radius < 1.0))
    throw Error(ErrorCode::NotContractive, "spectral radius of T_{z,z} is " + std::to_string(radius));
  return hermitian_part(direct_inverse(t, one));
}

CMatrix defect_operator(const ModuleElement& z, const ToleranceConfig& cfg) {
  return psd_power(fock_gram(z, cfg), -0.5, cfg);
}

}  // namespace opineq
