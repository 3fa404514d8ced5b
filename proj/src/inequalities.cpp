#include "opineq/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace opineq {

void Exponents::validate() const {
  if (!(p > 1.0 && q > 1.0 && r > 1.0)) throw Error(ErrorCode::BadExponents, "p, q, r must exceed 1");
  if (std::abs(1.0 / q + 1.0 / r - 2.0 / p) > 1e-12)
    throw Error(ErrorCode::BadExponents, "1/q + 1/r must equal 2/p");
}

namespace {

/// Collects gating branches and turns them into a report.
class ReportBuilder {
 public:
  ReportBuilder(std::string name, const ModuleElement& x, const ToleranceConfig& tol) : tol_(tol) {
    report_.name = std::move(name);
    report_.dim = x.dim();
    report_.len = x.length();
  }

  void scalar(const std::string& branch, double lhs, double rhs) {
    add(branch, lhs, rhs, rhs - lhs, std::max({std::abs(lhs), std::abs(rhs), 1.0}));
  }

  void order(const std::string& branch, const CMatrix& smaller, const CMatrix& larger) {
    const OrderResult r = psd_order_leq(smaller, larger, tol_);
    add(branch, op_norm(smaller), op_norm(larger), r.margin, r.scale);
  }

  /// One gating branch per Ky Fan order.
  void fan(const std::string& prefix, const CMatrix& smaller, const CMatrix& larger) {
    const RVector lhs = ky_fan_norms(smaller);
    const RVector rhs = ky_fan_norms(larger);
    for (Eigen::Index k = 0; k < lhs.size(); ++k)
      scalar(prefix + "ky_fan_" + std::to_string(k + 1), lhs(k), rhs(k));
  }

  /// Non-gating Schatten redundancy checks.
  void schatten_spot(const std::string& prefix, const CMatrix& smaller, const CMatrix& larger) {
    for (double p : {2.0, 3.0}) {
      const NormKind kind = NormKind::schatten(p);
      report_.diagnostics[prefix + kind.name()] = norm(larger, kind) - norm(smaller, kind);
    }
  }

  void diagnostic(const std::string& key, double value) { report_.diagnostics[key] = value; }

  InequalityReport finish() {
    report_.holds = all_hold_;
    return std::move(report_);
  }

 private:
  void add(const std::string& branch, double lhs, double rhs, double margin, double scale) {
    report_.norm_detail[branch] = margin;
    if (margin < -tol_.tol_rel * scale) all_hold_ = false;
    const double relative = margin / scale;
    if (relative < worst_) {
      worst_ = relative;
      report_.lhs = lhs;
      report_.rhs = rhs;
      report_.margin = margin;
      report_.scale = scale;
      report_.worst_branch = branch;
    }
  }

  ToleranceConfig tol_;
  InequalityReport report_;
  double worst_ = std::numeric_limits<double>::infinity();
  bool all_hold_ = true;
};

void require_normal(const ModuleElement& x, const char* which, const ToleranceConfig& tol) {
  const NormalityResult n = is_normal(x, tol);
  if (!n.normal)
    throw Error(ErrorCode::NotNormal, std::string(which) + " has normality defect " + std::to_string(n.defect));
}

void require_strict_contraction(const ModuleElement& x, const char* which, const ToleranceConfig& tol) {
  const double gram = op_norm(inner(x, x));
  if (gram > 1.0 - kContractionMargin + tol.tol_rel)
    throw Error(ErrorCode::NotContractive,
                std::string(which) + ": ‖<x,x>‖ = " + std::to_string(gram) + " exceeds 1 - 1e-3");
}

void require_action(const ModuleElement& x, const CMatrix& a) {
  if (a.rows() != x.dim() || a.cols() != x.dim()) throw Error(ErrorCode::DimMismatch, "argument a");
}

/// T_{x,y}(a) = ⟨x, a y⟩
CMatrix transform(const ModuleElement& x, const ModuleElement& y, const CMatrix& a) {
  return inner(x, left_act(a, y));
}

CMatrix one_minus_gram_power(const ModuleElement& x, double s, const ToleranceConfig& tol) {
  return psd_power(identity(x.dim()) - inner(x, x), s, tol);
}

bool is_central(const CMatrix& m, const ToleranceConfig& tol) {
  const Complex mean = m.trace() / static_cast<double>(m.rows());
  const double off = op_norm(m - mean * identity(m.rows()));
  return off <= tol.tol_rel * std::max(1.0, std::abs(mean));
}

}  // namespace

CMatrix interp_weight(const ModuleElement& x, double q, double eps) {
  // stacked(x) = P S Q*, so √w_t x_t ⟨x,x⟩^{(q−1)/2} = P_t S^q Q* and
  // K = Σ_t P_t S^{2q} P_t* = B B* with B = [P_1 S^q, …, P_n S^q].
  const Eigen::Index d = x.dim();
  const auto n = static_cast<Eigen::Index>(x.length());
  Eigen::JacobiSVD<CMatrix> svd(stacked(x), Eigen::ComputeThinU);
  const RVector s_pow = svd.singularValues().array().pow(q);
  const CMatrix& p = svd.matrixU();
  CMatrix factor(d, n * d);
  for (Eigen::Index t = 0; t < n; ++t)
    factor.middleCols(t * d, d) = p.middleRows(t * d, d) * s_pow.cast<Complex>().asDiagonal();
  // ε is taken relative to ‖K‖ so the shift does not depend on the scale of x
  const double top = s_pow.size() > 0 ? s_pow.maxCoeff() : 0.0;
  return gram_power(factor, 1.0 / (2.0 * q), eps * std::max(top * top, std::numeric_limits<double>::min()));
}

ModuleElement gruss_center(const ModuleElement& x, const GrussContext& g) {
  return x - right_mul(g.e(), inner(g.e(), x));
}

InequalityReport check_cs(const ModuleElement& x, const ModuleElement& y, const CheckOptions& opts) {
  require_same_ctx(x, y, "check_cs");
  ReportBuilder b("check_cs", x, opts.tol);
  const CMatrix xy = inner(x, y);
  const double nx = module_norm(x);
  b.order("squared", xy.adjoint() * xy, nx * nx * inner(y, y));
  b.order("root", matrix_abs(xy), nx * gram_power(y, 0.5));
  return b.finish();
}

InequalityReport check_basic(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                             const CheckOptions& opts) {
  require_same_ctx(x, y, "check_basic");
  require_action(x, a);
  ReportBuilder b("check_basic", x, opts.tol);
  const CMatrix lhs = transform(x, y, a);
  b.scalar("operator", op_norm(lhs), module_norm(x) * module_norm(y) * op_norm(a));
  const CMatrix rhs = gram_power(conjugate(x), 0.5) * a * gram_power(conjugate(y), 0.5);
  b.scalar("trace", norm(lhs, NormKind::trace()), norm(rhs, NormKind::trace()));
  return b.finish();
}

InequalityReport check_hs(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                          const CheckOptions& opts) {
  require_same_ctx(x, y, "check_hs");
  require_action(x, a);
  ReportBuilder b("check_hs", x, opts.tol);
  const double lhs = norm(transform(x, y, a), NormKind::hilbert_schmidt());
  b.scalar("hs_x", lhs, module_norm(x) * norm(a * gram_power(conjugate(y), 0.5), NormKind::hilbert_schmidt()));
  b.scalar("hs_y", lhs, module_norm(y) * norm(gram_power(conjugate(x), 0.5) * a, NormKind::hilbert_schmidt()));
  return b.finish();
}

InequalityReport check_refinement(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                                  const CheckOptions& opts) {
  require_same_ctx(x, y, "check_refinement");
  require_action(x, a);
  ReportBuilder b("check_refinement", x, opts.tol);
  const CMatrix t = transform(x, y, a);
  const double nx = module_norm(x);
  b.order("refinement", t.adjoint() * t, nx * nx * inner(y, left_act(a.adjoint() * a, y)));
  return b.finish();
}

InequalityReport check_uin(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                           const CheckOptions& opts) {
  require_same_ctx(x, y, "check_uin");
  require_action(x, a);
  if (opts.require_normality) {
    require_normal(x, "x", opts.tol);
    require_normal(y, "y", opts.tol);
  }
  ReportBuilder b("check_uin", x, opts.tol);
  const CMatrix lhs = transform(x, y, a);
  const CMatrix rhs = gram_power(x, 0.5) * a * gram_power(y, 0.5);
  b.fan("", lhs, rhs);
  b.schatten_spot("", lhs, rhs);
  return b.finish();
}

InequalityReport check_interp(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                              const Exponents& e, const CheckOptions& opts) {
  e.validate();
  require_same_ctx(x, y, "check_interp");
  require_action(x, a);
  ReportBuilder b("check_interp", x, opts.tol);
  const NormKind kind = NormKind::schatten(e.p);
  const double lhs = norm(transform(x, y, a), kind);
  auto rhs_at = [&](double eps) { return norm(interp_weight(x, e.q, eps) * a * interp_weight(y, e.r, eps), kind); };
  const double rhs = rhs_at(0.0);
  b.scalar(kind.name(), lhs, rhs);

  const double eps = opts.tol.epsilon_reg;
  const double at_eps = rhs_at(eps);
  const double at_10eps = rhs_at(10.0 * eps);
  b.diagnostic("eps_sensitivity", std::abs(at_10eps - at_eps) / std::max(rhs, std::numeric_limits<double>::min()));
  b.diagnostic("rhs_eps", at_eps);
  return b.finish();
}

InequalityReport check_naopaka(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                               const CheckOptions& opts) {
  require_same_ctx(x, y, "check_naopaka");
  require_action(x, a);
  if (opts.require_normality) {
    require_normal(x, "x", opts.tol);
    require_normal(y, "y", opts.tol);
  }
  if (opts.require_contraction) {
    require_strict_contraction(x, "x", opts.tol);
    require_strict_contraction(y, "y", opts.tol);
  }
  ReportBuilder b("check_naopaka", x, opts.tol);
  const CMatrix lhs = one_minus_gram_power(x, 0.5, opts.tol) * a * one_minus_gram_power(y, 0.5, opts.tol);
  const CMatrix rhs = a - transform(x, y, a);
  b.fan("", lhs, rhs);
  b.schatten_spot("", lhs, rhs);
  return b.finish();
}

InequalityReport check_alpha(const ModuleElement& x, const ModuleElement& y, const CMatrix& a, double alpha,
                             const CheckOptions& opts) {
  require_same_ctx(x, y, "check_alpha");
  require_action(x, a);
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidSpec, "alpha must be > 0");
  if (opts.require_normality) {
    require_normal(x, "x", opts.tol);
    require_normal(y, "y", opts.tol);
  }
  if (opts.require_contraction) {
    require_strict_contraction(x, "x", opts.tol);
    require_strict_contraction(y, "y", opts.tol);
  }
  ReportBuilder b("check_alpha", x, opts.tol);
  const CMatrix lhs =
      one_minus_gram_power(x, alpha / 2.0, opts.tol) * a * one_minus_gram_power(y, alpha / 2.0, opts.tol);
  const SeriesResult series = fractional_power_apply(ElementaryOperator(x, y), alpha, a, opts.tol);
  b.fan("", lhs, series.value);
  b.schatten_spot("", lhs, series.value);
  b.diagnostic("series_terms", series.terms_used);
  return b.finish();
}

InequalityReport check_defect(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                              const Exponents& e, const CheckOptions& opts) {
  e.validate();
  require_same_ctx(x, y, "check_defect");
  require_action(x, a);
  ReportBuilder b("check_defect", x, opts.tol);
  const ToleranceConfig& tol = opts.tol;
  const CMatrix dx = defect_operator(x, tol);
  const CMatrix dy = defect_operator(y, tol);
  const CMatrix dxbar = defect_operator(conjugate(x), tol);
  const CMatrix dybar = defect_operator(conjugate(y), tol);

  const NormKind kind = NormKind::schatten(e.p);
  const CMatrix lhs = psd_power(dx, 1.0 - 1.0 / e.q, tol) * a * psd_power(dy, 1.0 - 1.0 / e.r, tol);
  const CMatrix rhs =
      psd_power(dxbar, -1.0 / e.q, tol) * (a - transform(x, y, a)) * psd_power(dybar, -1.0 / e.r, tol);
  b.scalar(kind.name(), norm(lhs, kind), norm(rhs, kind));
  return b.finish();
}

InequalityReport check_gruss(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                             const GrussContext& g, const std::optional<GrussBall>& ball,
                             const CheckOptions& opts) {
  require_same_ctx(x, g.e(), "check_gruss");
  require_same_ctx(y, g.e(), "check_gruss");
  require_action(x, a);
  const ToleranceConfig& tol = opts.tol;
  if (opts.require_normality) {
    // Φ-normality, operationally: e is central, so Φ(x, ay) = ⟨x′, a y′⟩
    // with x′ = x − e⟨e,x⟩, and the centered elements are normal.
    for (const CMatrix& part : g.e().parts())
      if (!is_central(part, tol)) throw Error(ErrorCode::NotNormal, "e is not central");
    require_normal(gruss_center(x, g), "x - e<e,x>", tol);
    require_normal(gruss_center(y, g), "y - e<e,y>", tol);
  }
  if (ball) {
    auto check_ball = [&](const ModuleElement& z, double lo, double hi, const char* which) {
      const double radius = std::abs(hi - lo) / 2.0;
      const double dist = module_norm(z - Complex((hi + lo) / 2.0) * g.e());
      if (dist > radius + tol.tol_rel * std::max(1.0, radius))
        throw Error(ErrorCode::BallViolated, std::string(which) + " lies outside its ball");
    };
    check_ball(x, ball->m, ball->M, "x");
    check_ball(y, ball->p, ball->P, "y");
  }

  ReportBuilder b("check_gruss", x, tol);
  const CMatrix lhs = gruss_inner(x, left_act(a, y), g);
  const CMatrix rhs = psd_power(gruss_inner(x, x, g), 0.5, tol) * a * psd_power(gruss_inner(y, y, g), 0.5, tol);
  b.fan("gruss3_", lhs, rhs);
  if (ball) {
    const double factor = 0.25 * std::abs(ball->M - ball->m) * std::abs(ball->P - ball->p);
    const RVector lhs_k = ky_fan_norms(lhs);
    const RVector a_k = ky_fan_norms(a);
    for (Eigen::Index k = 0; k < lhs_k.size(); ++k)
      b.scalar("gruss_mm_ky_fan_" + std::to_string(k + 1), lhs_k(k), factor * a_k(k));
  }
  return b.finish();
}

InequalityReport check_radius_submult(const ModuleElement& x, const ModuleElement& y,
                                      std::span<const CMatrix> probes, const CheckOptions& opts) {
  require_same_ctx(x, y, "check_radius_submult");
  ReportBuilder b("check_radius_submult", x, opts.tol);
  const ElementaryOperator txy(x, y);
  const double rxy = spectral_radius(txy);
  const double rxx = spectral_radius(ElementaryOperator(x, x));
  const double ryy = spectral_radius(ElementaryOperator(y, y));
  b.scalar("radius", rxy * rxy, rxx * ryy);
  const OperatorNormBounds bounds = operator_norm_T(txy, probes);
  b.scalar("operator_norm", bounds.lower, bounds.upper);
  b.diagnostic("r_xy", rxy);
  return b.finish();
}

std::vector<InequalityReport> naopaka_delta_sweep(const ModuleElement& x, const ModuleElement& y,
                                                  const CMatrix& a, std::span<const double> deltas,
                                                  const CheckOptions& opts) {
  const double nx = module_norm(x);
  const double ny = module_norm(y);
  if (nx == 0.0 || ny == 0.0) throw Error(ErrorCode::InvalidSpec, "delta sweep needs nonzero x and y");
  std::vector<InequalityReport> out;
  out.reserve(deltas.size());
  for (double delta : deltas) {
    InequalityReport r = check_naopaka(Complex(delta / nx) * x, Complex(delta / ny) * y, a, opts);
    r.params["delta"] = delta;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace opineq
