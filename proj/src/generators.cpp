#include "opineq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace opineq {

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Generic: return "generic";
    case GeneratorKind::NormalCommuting: return "normal_commuting";
    case GeneratorKind::Contractive: return "contractive";
    case GeneratorKind::NormalContractive: return "normal_contractive";
    case GeneratorKind::Gruss: return "gruss";
  }
  return "generic";
}

GeneratorKind generator_kind_from_string(std::string_view name) {
  for (GeneratorKind k : {GeneratorKind::Generic, GeneratorKind::NormalCommuting, GeneratorKind::Contractive,
                          GeneratorKind::NormalContractive, GeneratorKind::Gruss})
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::InvalidSpec, "unknown generator kind '" + std::string(name) + "'");
}

void GeneratorSpec::validate() const {
  if (dim < 1 || dim > 8) throw Error(ErrorCode::InvalidSpec, "dim must lie in [1, 8]");
  if (len < 1 || len > 6) throw Error(ErrorCode::InvalidSpec, "len must lie in [1, 6]");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidSpec, "scale must be > 0");
  if (!(contraction > 0.0 && contraction < 1.0)) throw Error(ErrorCode::InvalidSpec, "contraction must lie in (0, 1)");
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

namespace {

// sub-streams of one instance seed
enum Stream : std::uint64_t { kWeights = 0, kX = 1, kY = 2, kA = 3, kBasis = 4, kE = 5, kBall = 6 };

Complex complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return Complex(re, im) / std::sqrt(2.0);
}

CVector gaussian_vector(std::mt19937_64& rng, Eigen::Index d) {
  CVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = complex_normal(rng);
  return v;
}

ModuleElement normal_in_basis(const ModuleContext& ctx, const CMatrix& u, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::vector<CMatrix> parts;
  for (std::size_t t = 0; t < ctx.length(); ++t)
    parts.push_back(u * (scale * gaussian_vector(rng, ctx.dim)).asDiagonal() * u.adjoint());
  return ModuleElement(ctx, std::move(parts));
}

ModuleElement gaussian_element(const ModuleContext& ctx, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::vector<CMatrix> parts;
  for (std::size_t t = 0; t < ctx.length(); ++t) {
    CMatrix p(ctx.dim, ctx.dim);
    for (Eigen::Index j = 0; j < ctx.dim; ++j)
      for (Eigen::Index i = 0; i < ctx.dim; ++i) p(i, j) = scale * complex_normal(rng);
    parts.push_back(std::move(p));
  }
  return ModuleElement(ctx, std::move(parts));
}

ModuleElement rescale_to(const ModuleElement& x, double target_norm) {
  const double n = module_norm(x);
  if (n == 0.0) return x;
  return Complex(target_norm / n) * x;
}

bool is_normal_kind(GeneratorKind k) {
  return k == GeneratorKind::NormalCommuting || k == GeneratorKind::NormalContractive || k == GeneratorKind::Gruss;
}

bool is_contractive_kind(GeneratorKind k) {
  return k == GeneratorKind::Contractive || k == GeneratorKind::NormalContractive;
}

/// One of x or y for the non-Grüss kinds; `basis` receives the shared unitary.
ModuleElement draw(const GeneratorSpec& spec, const ModuleContext& ctx, std::uint64_t stream,
                   std::optional<CMatrix>& basis) {
  const std::uint64_t seed = trial_seed(spec.seed, stream);
  switch (spec.kind) {
    case GeneratorKind::Generic:
      return gaussian_element(ctx, seed, spec.scale);
    case GeneratorKind::Contractive:
      return rescale_to(gaussian_element(ctx, seed, spec.scale), spec.contraction);
    case GeneratorKind::NormalCommuting:
    case GeneratorKind::NormalContractive: {
      basis = gen_haar_unitary(trial_seed(seed, kBasis), ctx.dim);
      ModuleElement x = normal_in_basis(ctx, *basis, seed, spec.scale);
      return spec.kind == GeneratorKind::NormalContractive ? rescale_to(x, spec.contraction) : x;
    }
    case GeneratorKind::Gruss:
      break;
  }
  throw Error(ErrorCode::InvalidSpec, "draw: unsupported kind");
}

void fill_gruss(const GeneratorSpec& spec, const ModuleContext& ctx, Instance& out) {
  const CMatrix u = gen_haar_unitary(trial_seed(spec.seed, kBasis), ctx.dim);
  out.basis_x = u;
  out.basis_y = u;

  // central unit e: e_t = c_t·I with Σ w_t |c_t|² = 1
  std::mt19937_64 erng(trial_seed(spec.seed, kE));
  std::vector<Complex> c(ctx.length());
  double total = 0.0;
  for (std::size_t t = 0; t < c.size(); ++t) {
    c[t] = complex_normal(erng);
    total += ctx.weights[t] * std::norm(c[t]);
  }
  std::vector<CMatrix> eparts;
  for (std::size_t t = 0; t < c.size(); ++t) eparts.push_back(c[t] / std::sqrt(total) * identity(ctx.dim));
  const ModuleElement e(ctx, std::move(eparts));

  std::mt19937_64 brng(trial_seed(spec.seed, kBall));
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sorted_pair = [&] {
    double lo = n(brng), hi = n(brng);
    if (lo > hi) std::swap(lo, hi);
    if (hi - lo < 1e-3) hi = lo + 1e-3;
    return std::pair{lo, hi};
  };
  const auto [m, M] = sorted_pair();
  const auto [p, P] = sorted_pair();
  out.ball = GrussBall{m, M, p, P};

  // center + a normal displacement of module norm ρ·radius, ρ ∈ [0, 1)
  auto inside = [&](std::uint64_t stream, double lo, double hi) {
    const ModuleElement w = normal_in_basis(ctx, u, trial_seed(spec.seed, stream), 1.0);
    const double rho = unit(brng);
    return Complex((hi + lo) / 2.0) * e + rescale_to(w, rho * (hi - lo) / 2.0);
  };
  out.x = inside(kX, m, M);
  out.y = inside(kY, p, P);
  out.e = e;
}

}  // namespace

CMatrix gen_haar_unitary(std::uint64_t seed, Eigen::Index d) {
  if (d < 1) throw Error(ErrorCode::InvalidSpec, "gen_haar_unitary: d must be >= 1");
  const CMatrix z = gen_gaussian(seed, d);
  Eigen::HouseholderQR<CMatrix> qr(z);
  const CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  CVector phase(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double mod = std::abs(r(i, i));
    phase(i) = mod == 0.0 ? Complex(1.0) : r(i, i) / mod;
  }
  return q * phase.asDiagonal();
}

CMatrix gen_gaussian(std::uint64_t seed, Eigen::Index d) {
  std::mt19937_64 rng(seed);
  CMatrix z(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) z(i, j) = complex_normal(rng);
  return z;
}

ModuleContext gen_context(const GeneratorSpec& spec) {
  spec.validate();
  ModuleContext ctx = ModuleContext::uniform(spec.dim, spec.len);
  if (spec.random_weights) {
    std::mt19937_64 rng(trial_seed(spec.seed, kWeights));
    std::uniform_real_distribution<double> w(0.1, 2.0);
    for (double& v : ctx.weights) v = w(rng);
  }
  return ctx;
}

ModuleElement gen_element(const GeneratorSpec& spec) { return gen_instance(spec).x; }

Instance gen_instance(const GeneratorSpec& spec) {
  const ModuleContext ctx = gen_context(spec);
  Instance out;
  out.seed = spec.seed;
  out.kind = spec.kind;
  out.a = gen_gaussian(trial_seed(spec.seed, kA), spec.dim);
  out.contraction = spec.contraction;
  if (spec.kind == GeneratorKind::Gruss) {
    fill_gruss(spec, ctx, out);
  } else {
    out.x = draw(spec, ctx, kX, out.basis_x);
    out.y = draw(spec, ctx, kY, out.basis_y);
  }

  // hypotheses hold by construction; a miss here is a generator bug
  if (is_normal_kind(spec.kind)) {
    for (const ModuleElement* z : {&out.x, &out.y}) {
      const NormalityResult n = is_normal(
          spec.kind == GeneratorKind::Gruss ? *z - right_mul(*out.e, inner(*out.e, *z)) : *z);
      if (!n.normal) throw Error(ErrorCode::InvalidSpec, "generated tuple is not normal");
    }
  }
  if (is_contractive_kind(spec.kind)) {
    const double target = spec.contraction * spec.contraction;
    for (const ModuleElement* z : {&out.x, &out.y})
      if (std::abs(op_norm(inner(*z, *z)) - target) > 1e-10)
        throw Error(ErrorCode::InvalidSpec, "generated tuple misses the contraction target");
  }
  return out;
}

}  // namespace opineq
