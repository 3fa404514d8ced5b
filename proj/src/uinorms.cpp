#include "opineq/uinorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace opineq {

std::string NormKind::name() const {
  std::ostringstream out;
  switch (tag) {
    case Tag::Operator: return "operator";
    case Tag::Trace: return "trace";
    case Tag::HilbertSchmidt: return "hilbert_schmidt";
    case Tag::Schatten:
      if (std::isinf(p)) return "schatten_inf";
      out << "schatten_" << p;
      return out.str();
    case Tag::KyFan: return "ky_fan_" + std::to_string(k);
    case Tag::KyFanDual: return "ky_fan_dual_" + std::to_string(k);
  }
  return "unknown";
}

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double norm_from_singular_values(const RVector& sigma, const NormKind& kind) {
  const Eigen::Index d = sigma.size();
  if (d == 0) return 0.0;
  auto check_k = [&](int k) {
    if (k < 1) throw Error(ErrorCode::InvalidNorm, "Ky Fan order must be >= 1");
    if (k > d) throw Error(ErrorCode::InvalidK, "Ky Fan order " + std::to_string(k) + " exceeds dim");
  };
  switch (kind.tag) {
    case NormKind::Tag::Operator: return sigma(0);
    case NormKind::Tag::Trace: return sigma.sum();
    case NormKind::Tag::HilbertSchmidt: return sigma.norm();
    case NormKind::Tag::Schatten: {
      if (std::isnan(kind.p) || kind.p < 1.0)
        throw Error(ErrorCode::InvalidNorm, "Schatten exponent must be >= 1");
      if (std::isinf(kind.p) || sigma(0) == 0.0) return sigma(0);
      // scaled to avoid overflow for large p
      const double top = sigma(0);
      double acc = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) acc += std::pow(sigma(i) / top, kind.p);
      return top * std::pow(acc, 1.0 / kind.p);
    }
    case NormKind::Tag::KyFan:
      check_k(kind.k);
      return sigma.head(kind.k).sum();
    case NormKind::Tag::KyFanDual:
      check_k(kind.k);
      return std::max(sigma(0), sigma.sum() / kind.k);
  }
  throw Error(ErrorCode::InvalidNorm, "unknown norm tag");
}

double norm(const CMatrix& m, const NormKind& kind) {
  return norm_from_singular_values(singular_values(m), kind);
}

RVector ky_fan_norms(const CMatrix& m) {
  RVector sigma = singular_values(m);
  for (Eigen::Index i = 1; i < sigma.size(); ++i) sigma(i) += sigma(i - 1);
  return sigma;
}

DominanceResult fan_dominance_leq(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimMismatch, "fan_dominance_leq");
  const RVector lhs = ky_fan_norms(a);
  const RVector rhs = ky_fan_norms(b);
  DominanceResult out;
  out.margins = rhs - lhs;
  out.holds = true;
  double worst = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < lhs.size(); ++i) {
    const double scale = std::max({lhs(i), rhs(i), 1.0});
    const double relative = out.margins(i) / scale;
    if (out.margins(i) < -cfg.tol_rel * scale) out.holds = false;
    if (relative < worst) {
      worst = relative;
      out.worst_k = static_cast<int>(i) + 1;
      out.margin = out.margins(i);
      out.scale = scale;
    }
  }
  return out;
}

double dual_pairing_check(const CMatrix& m, const NormKind& kind) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMatrix y;
  switch (kind.tag) {
    case NormKind::Tag::Trace:
      y = svd.matrixV() * svd.matrixU().adjoint();
      break;
    case NormKind::Tag::Operator:
      y = svd.matrixV().col(0) * svd.matrixU().col(0).adjoint();
      break;
    default:
      throw Error(ErrorCode::InvalidNorm, "duality pairing is defined for Operator and Trace only");
  }
  return std::abs((m * y).trace());
}

}  // namespace opineq
