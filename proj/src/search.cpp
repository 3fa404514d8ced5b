#include <cmath>
#include <limits>
#include <random>

#include "opineq/suite.hpp"

namespace opineq {

namespace {

GeneratorKind start_kind(const CheckInfo& info, const SearchConfig& cfg) {
  if (!cfg.drop_normality) return info.kind;
  switch (info.kind) {
    case GeneratorKind::NormalCommuting: return GeneratorKind::Generic;
    case GeneratorKind::NormalContractive: return GeneratorKind::Contractive;
    default: return info.kind;
  }
}

CMatrix jitter(const CMatrix& m, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, sigma / std::sqrt(2.0));
  CMatrix out = m;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) += Complex(n(rng), n(rng));
  return out;
}

ModuleElement jitter(const ModuleElement& x, double sigma, std::mt19937_64& rng) {
  std::vector<CMatrix> parts;
  for (const CMatrix& p : x.parts()) parts.push_back(jitter(p, sigma, rng));
  return ModuleElement(x.ctx(), std::move(parts));
}

/// Keeps only the part of each slot that is diagonal in `u`.
ModuleElement project_diagonal(const ModuleElement& x, const CMatrix& u) {
  std::vector<CMatrix> parts;
  for (const CMatrix& p : x.parts()) {
    const CVector diag = (u.adjoint() * p * u).diagonal();
    parts.push_back(u * diag.asDiagonal() * u.adjoint());
  }
  return ModuleElement(x.ctx(), std::move(parts));
}

ModuleElement shrink_to(const ModuleElement& x, double radius) {
  const double n = module_norm(x);
  return n > radius ? Complex(radius / n) * x : x;
}

ModuleElement into_ball(const ModuleElement& z, const ModuleElement& e, double lo, double hi) {
  const ModuleElement center = Complex((hi + lo) / 2.0) * e;
  return center + shrink_to(z - center, (1.0 - 1e-9) * std::abs(hi - lo) / 2.0);
}

void repair(Instance& in, const CheckInfo& info, const SearchConfig& cfg) {
  if (!cfg.drop_normality) {
    if (in.basis_x) in.x = project_diagonal(in.x, *in.basis_x);
    if (in.basis_y) in.y = project_diagonal(in.y, *in.basis_y);
  }
  const bool contractive = in.kind == GeneratorKind::Contractive || in.kind == GeneratorKind::NormalContractive;
  if (!cfg.drop_contraction && (info.needs_contraction || contractive)) {
    in.x = shrink_to(in.x, in.contraction);
    in.y = shrink_to(in.y, in.contraction);
  }
  if (in.ball && in.e) {
    in.x = into_ball(in.x, *in.e, in.ball->m, in.ball->M);
    in.y = into_ball(in.y, *in.e, in.ball->p, in.ball->P);
  }
}

}  // namespace

SearchResult search_counterexample(const SearchConfig& cfg, const ToleranceConfig& tol) {
  const CheckInfo& info = find_check(cfg.check);
  if (cfg.budget < 1) throw Error(ErrorCode::InvalidSpec, "budget must be >= 1");
  const CheckOptions opts{!cfg.drop_normality, !cfg.drop_contraction, tol};

  std::map<std::string, double> params = cfg.params;
  if (info.params == CheckParams::Exponents && params.empty()) params = {{"p", 2.0}, {"q", 2.0}, {"r", 2.0}};
  if (info.params == CheckParams::Alpha && params.empty()) params = {{"alpha", 0.5}};

  std::mt19937_64 rng(mix64(cfg.seed ^ 0x636c696d62ULL));
  SearchResult result;
  double best = std::numeric_limits<double>::infinity();
  std::optional<Instance> best_instance;

  auto try_eval = [&](const Instance& in) -> std::optional<InequalityReport> {
    ++result.evaluations;
    try {
      return evaluate(cfg.check, in, params, opts);
    } catch (const Error&) {
      ++result.rejected_errors;
      return std::nullopt;
    }
  };

  while (result.evaluations < cfg.budget) {
    GeneratorSpec spec;
    spec.seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(result.restarts));
    spec.dim = cfg.dim;
    spec.len = cfg.len;
    spec.kind = start_kind(info, cfg);
    ++result.restarts;
    Instance current = gen_instance(spec);
    auto report = try_eval(current);
    if (!report) continue;
    double current_value = report->relative_margin();
    if (current_value < best) {
      best = current_value;
      result.best = *report;
      best_instance = current;
    }

    // climb until the step size collapses or the walk stalls
    double sigma = 0.1 * std::max(1.0, module_norm(current.x));
    int stalled = 0;
    while (result.evaluations < cfg.budget && sigma > 1e-7 && stalled < 200) {
      Instance trial = current;
      trial.x = jitter(current.x, sigma, rng);
      trial.y = jitter(current.y, sigma, rng);
      trial.a = jitter(current.a, sigma, rng);
      repair(trial, info, cfg);
      const auto r = try_eval(trial);
      if (r && r->relative_margin() < current_value) {
        current = std::move(trial);
        current_value = r->relative_margin();
        sigma *= 1.5;
        stalled = 0;
        if (current_value < best) {
          best = current_value;
          result.best = *r;
          best_instance = current;
        }
      } else {
        sigma *= 0.9;
        ++stalled;
      }
    }
  }

  if (!best_instance) throw Error(ErrorCode::InvalidSpec, "search found no evaluable instance within budget");
  result.record = InstanceRecord{cfg.check, *best_instance, params, cfg.drop_normality, cfg.drop_contraction};
  return result;
}

}  // namespace opineq
