#include "opineq/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opineq {

namespace {

double psd_tolerance(const RVector& values, const ToleranceConfig& cfg) {
  const double norm = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  return cfg.tol_rel * std::max(norm, 1.0);
}

CMatrix from_spectrum(const CMatrix& vectors, const RVector& values) {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(tol_abs >= 0 && tol_rel >= 0 && clamp >= 0 && epsilon_reg > 0 && series_tail > 0))
    throw Error(ErrorCode::InvalidSpec, "tolerances must be nonnegative (epsilon_reg, series_tail > 0)");
  if (max_terms < 1) throw Error(ErrorCode::InvalidSpec, "max_terms must be >= 1");
}

CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double hermitian_defect(const CMatrix& h) {
  if (h.rows() != h.cols()) return INFINITY;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix& h) { return (h + h.adjoint()) * 0.5; }

void require_hermitian(const CMatrix& h, const ToleranceConfig& cfg) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw Error(ErrorCode::NotHermitian, "matrix is not square");
  if (!h.allFinite()) throw Error(ErrorCode::NotHermitian, "non-finite entry");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double defect = hermitian_defect(h);
  if (defect > cfg.tol_abs * scale)
    throw Error(ErrorCode::NotHermitian, "self-adjointness defect " + std::to_string(defect));
}

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimMismatch, where);
}

HermEig herm_eig(const CMatrix& h, const ToleranceConfig& cfg) {
  require_hermitian(h, cfg);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  return {es.eigenvalues(), es.eigenvectors()};
}

double eigmin(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CMatrix psd_power(const CMatrix& h, double s, const ToleranceConfig& cfg) {
  HermEig eig = herm_eig(h, cfg);
  const double tol_psd = psd_tolerance(eig.values, cfg);
  if (eig.values(0) < -tol_psd)
    throw Error(ErrorCode::NotPSD, "eigmin " + std::to_string(eig.values(0)));
  const Eigen::Index d = h.rows();
  if (s == 0.0) return identity(d);
  if (s == 1.0) return hermitian_part(h);

  RVector powered(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lambda = std::max(eig.values(i), 0.0);
    if (s < 0 && lambda <= cfg.clamp)
      throw Error(ErrorCode::SingularNegativePower, "eigenvalue " + std::to_string(eig.values(i)));
    powered(i) = std::pow(lambda, s);
  }
  return from_spectrum(eig.vectors, powered);
}

CMatrix regularized_inv_power(const CMatrix& h, double s, double eps, const ToleranceConfig& cfg) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidSpec, "regularization must be positive");
  HermEig eig = herm_eig(h, cfg);
  if (eig.values(0) < -psd_tolerance(eig.values, cfg))
    throw Error(ErrorCode::NotPSD, "eigmin " + std::to_string(eig.values(0)));
  RVector powered = eig.values.unaryExpr([&](double l) { return std::pow(std::max(l, 0.0) + eps, -s); });
  return from_spectrum(eig.vectors, powered);
}

CMatrix matrix_abs(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  return from_spectrum(svd.matrixV(), svd.singularValues());
}

CMatrix gram_power(const CMatrix& factor, double s, double eps) {
  const Eigen::Index d = factor.rows();
  if (s == 0.0) return identity(d);
  if (factor.cols() == 0) {
    if (s < 0 && eps <= 0) throw Error(ErrorCode::SingularNegativePower, "empty factor");
    return identity(d) * std::pow(eps, s);
  }
  // Pivoted QR first, then Jacobi on R*: keeps small singular values of
  // column-graded factors accurate to high relative precision.
  const Eigen::ColPivHouseholderQR<CMatrix> qr(factor);
  const CMatrix r = qr.matrixR().topRows(std::min(d, factor.cols())).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<CMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(r.adjoint(), Eigen::ComputeFullV);
  const CMatrix q = qr.householderQ();
  CMatrix u = CMatrix::Zero(d, d);
  u.leftCols(r.rows()) = q.leftCols(r.rows()) * svd.matrixV();
  if (r.rows() < d) u.rightCols(d - r.rows()) = q.rightCols(d - r.rows());
  RVector powered = RVector::Zero(d);
  const RVector& sigma = svd.singularValues();
  for (Eigen::Index i = 0; i < d; ++i) {
    const double value = (i < sigma.size() ? sigma(i) * sigma(i) : 0.0) + eps;
    if (s < 0 && value <= 0)
      throw Error(ErrorCode::SingularNegativePower, "rank-deficient Gram factor");
    powered(i) = value > 0 ? std::pow(value, s) : 0.0;
  }
  return from_spectrum(u, powered);
}

OrderResult psd_order_leq(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw Error(ErrorCode::DimMismatch, "psd_order_leq");
  OrderResult out;
  out.margin = eigmin(b - a);
  out.scale = std::max({op_norm(hermitian_part(a)), op_norm(hermitian_part(b)), 1.0});
  out.holds = out.margin >= -cfg.tol_rel * out.scale;
  return out;
}

CVector vec(const CMatrix& a) { return a.reshaped(); }

CMatrix unvec(const CVector& v, Eigen::Index d) {
  if (v.size() != d * d) throw Error(ErrorCode::DimMismatch, "unvec");
  return v.reshaped(d, d);
}

}  // namespace opineq
