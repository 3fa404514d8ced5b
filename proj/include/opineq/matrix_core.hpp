#pragma once

#include <Eigen/Dense>

#include <complex>

#include "opineq/errors.hpp"

namespace opineq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Numerical tolerances shared by every module.
///
/// `tol_rel` is always applied against max(‖A‖, ‖B‖, 1) of the operands being
/// compared, so randomly scaled instances are judged uniformly.
struct ToleranceConfig {
  double tol_abs = 1e-10;
  double tol_rel = 1e-8;
  double clamp = 1e-12;
  double epsilon_reg = 1e-10;
  double series_tail = 1e-10;
  int max_terms = 10'000;

  void validate() const;
};

CMatrix identity(Eigen::Index d);
CMatrix adjoint(const CMatrix& m);

/// Largest singular value.
double op_norm(const CMatrix& m);

/// max |h(i,j) - conj(h(j,i))|
double hermitian_defect(const CMatrix& h);

/// (h + h*) / 2
CMatrix hermitian_part(const CMatrix& h);

/// Throws NotHermitian unless `h` is square and self-adjoint within
/// tol_abs·max(1, max|h(i,j)|).
void require_hermitian(const CMatrix& h, const ToleranceConfig& cfg);

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* where);

struct HermEig {
  RVector values;   // ascending
  CMatrix vectors;  // unitary, columns are eigenvectors
};

HermEig herm_eig(const CMatrix& h, const ToleranceConfig& cfg = {});

/// Smallest eigenvalue of the Hermitian part of `h`.
double eigmin(const CMatrix& h);

/// h^s for PSD h. Eigenvalues that are negative within the PSD tolerance are
/// clamped to zero. Negative `s` requires every eigenvalue to exceed `clamp`.
CMatrix psd_power(const CMatrix& h, double s, const ToleranceConfig& cfg = {});

/// (h + εI)^{-s} for PSD h; always well defined for ε > 0.
CMatrix regularized_inv_power(const CMatrix& h, double s, double eps,
                              const ToleranceConfig& cfg = {});

/// |m| = (m* m)^{1/2}, computed from the SVD so small singular values keep
/// their relative accuracy.
CMatrix matrix_abs(const CMatrix& m);

/// (B B* + εI)^s for a (possibly wide) factor B.
///
/// Works on the singular values of B directly rather than on the formed Gram
/// matrix. When B carries a strongly graded column scaling (Gram powers like
/// ⟨x,x⟩^q) the one-sided route keeps full relative accuracy where an
/// eigendecomposition of B B* loses everything below ε‖B‖².
CMatrix gram_power(const CMatrix& factor, double s, double eps = 0.0);

struct OrderResult {
  bool holds = false;
  double margin = 0.0;  // eigmin(B - A)
  double scale = 1.0;   // max(‖A‖, ‖B‖, 1)
};

/// Löwner order test A ≤ B.
OrderResult psd_order_leq(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg = {});

/// Column-stacking vec(a) and its inverse.
CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, Eigen::Index d);

}  // namespace opineq
