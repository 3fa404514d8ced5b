#include "opineq/hilbert_module.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opineq {

ModuleContext ModuleContext::uniform(Eigen::Index dim, std::size_t length) {
  ModuleContext ctx{dim, std::vector<double>(length, 1.0)};
  ctx.validate();
  return ctx;
}

void ModuleContext::validate() const {
  if (dim < 1) throw Error(ErrorCode::InvalidSpec, "module dim must be >= 1");
  if (weights.empty()) throw Error(ErrorCode::InvalidSpec, "module length must be >= 1");
  for (double w : weights)
    if (!(w > 0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidSpec, "weights must be finite and > 0");
}

ModuleElement::ModuleElement(ModuleContext ctx, std::vector<CMatrix> parts)
    : ctx_(std::move(ctx)), parts_(std::move(parts)) {
  ctx_.validate();
  if (parts_.size() != ctx_.length())
    throw Error(ErrorCode::CtxMismatch, "part count differs from context length");
  for (const CMatrix& p : parts_) {
    if (p.rows() != ctx_.dim || p.cols() != ctx_.dim)
      throw Error(ErrorCode::DimMismatch, "part is not dim x dim");
    if (!p.allFinite()) throw Error(ErrorCode::InvalidSpec, "non-finite entry in module element");
  }
}

ModuleElement ModuleElement::zero(const ModuleContext& ctx) {
  return constant(ctx, CMatrix::Zero(ctx.dim, ctx.dim));
}

ModuleElement ModuleElement::constant(const ModuleContext& ctx, const CMatrix& a) {
  return ModuleElement(ctx, std::vector<CMatrix>(ctx.length(), a));
}

void require_same_ctx(const ModuleElement& x, const ModuleElement& y, const char* where) {
  if (!(x.ctx() == y.ctx())) throw Error(ErrorCode::CtxMismatch, where);
}

namespace {

template <typename F>
ModuleElement map_parts(const ModuleElement& x, F&& f) {
  std::vector<CMatrix> parts;
  parts.reserve(x.length());
  for (const CMatrix& p : x.parts()) parts.push_back(f(p));
  return ModuleElement(x.ctx(), std::move(parts));
}

template <typename F>
ModuleElement zip_parts(const ModuleElement& x, const ModuleElement& y, F&& f, const char* where) {
  require_same_ctx(x, y, where);
  std::vector<CMatrix> parts;
  parts.reserve(x.length());
  for (std::size_t t = 0; t < x.length(); ++t) parts.push_back(f(x[t], y[t]));
  return ModuleElement(x.ctx(), std::move(parts));
}

void require_action_dim(const ModuleElement& x, const CMatrix& a) {
  if (a.rows() != x.dim() || a.cols() != x.dim())
    throw Error(ErrorCode::DimMismatch, "acting matrix has wrong dimension");
}

}  // namespace

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y) {
  return zip_parts(x, y, [](const CMatrix& a, const CMatrix& b) -> CMatrix { return a + b; }, "operator+");
}

ModuleElement operator-(const ModuleElement& x, const ModuleElement& y) {
  return zip_parts(x, y, [](const CMatrix& a, const CMatrix& b) -> CMatrix { return a - b; }, "operator-");
}

ModuleElement operator*(Complex c, const ModuleElement& x) {
  return map_parts(x, [c](const CMatrix& p) -> CMatrix { return c * p; });
}

CMatrix inner(const ModuleElement& x, const ModuleElement& y) {
  require_same_ctx(x, y, "inner");
  CMatrix acc = CMatrix::Zero(x.dim(), x.dim());
  for (std::size_t t = 0; t < x.length(); ++t) acc.noalias() += x.weight(t) * (x[t].adjoint() * y[t]);
  return acc;
}

ModuleElement right_mul(const ModuleElement& x, const CMatrix& a) {
  require_action_dim(x, a);
  return map_parts(x, [&a](const CMatrix& p) -> CMatrix { return p * a; });
}

ModuleElement left_act(const CMatrix& a, const ModuleElement& x) {
  require_action_dim(x, a);
  return map_parts(x, [&a](const CMatrix& p) -> CMatrix { return a * p; });
}

ModuleElement conjugate(const ModuleElement& x) {
  return map_parts(x, [](const CMatrix& p) -> CMatrix { return p.adjoint(); });
}

double module_norm(const ModuleElement& x) {
  // singular values of the stacked factor are the square roots of eig(⟨x,x⟩)
  return op_norm(stacked(x));
}

CMatrix stacked(const ModuleElement& x) {
  const Eigen::Index d = x.dim();
  CMatrix out(d * static_cast<Eigen::Index>(x.length()), d);
  for (std::size_t t = 0; t < x.length(); ++t)
    out.middleRows(static_cast<Eigen::Index>(t) * d, d) = std::sqrt(x.weight(t)) * x[t];
  return out;
}

CMatrix gram_power(const ModuleElement& x, double s) { return gram_power(stacked(x).adjoint(), s); }

NormalityResult is_normal(const ModuleElement& x, const ToleranceConfig& cfg) {
  const CMatrix gram = inner(x, x);
  const ModuleElement xbar = conjugate(x);
  NormalityResult out;
  double max_part = 0.0;
  for (const CMatrix& p : x.parts()) {
    out.defect = std::max(out.defect, op_norm(gram * p - p * gram));
    max_part = std::max(max_part, op_norm(p));
  }
  out.defect = std::max(out.defect, op_norm(gram - inner(xbar, xbar)));
  const double gram_norm = op_norm(gram);
  out.scale = std::max({1.0, gram_norm, gram_norm * max_part});
  out.normal = out.defect <= cfg.tol_rel * out.scale;
  return out;
}

GrussContext::GrussContext(ModuleElement e, const ToleranceConfig& cfg) : e_(std::move(e)) {
  const double deviation = op_norm(inner(e_, e_) - identity(e_.dim()));
  if (deviation > cfg.tol_rel)
    throw Error(ErrorCode::NonUnitalE, "<e,e> differs from identity by " + std::to_string(deviation));
}

CMatrix gruss_inner(const ModuleElement& x, const ModuleElement& y, const GrussContext& g) {
  require_same_ctx(x, g.e(), "gruss_inner");
  require_same_ctx(y, g.e(), "gruss_inner");
  return inner(x, y) - inner(x, g.e()) * inner(g.e(), y);
}

}  // namespace opineq
