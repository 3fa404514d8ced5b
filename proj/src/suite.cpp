#include "opineq/suite.hpp"

#include <fstream>
#include <ostream>

namespace opineq {

const std::vector<CheckInfo>& check_registry() {
  using K = GeneratorKind;
  using P = CheckParams;
  static const std::vector<CheckInfo> registry{
      {"check_cs", "Cauchy-Schwarz (CS)", K::Generic, P::None, false, false},
      {"check_basic", "Theorem (Prva), (1infty)", K::Generic, P::None, false, false},
      {"check_hs", "Hilbert-Schmidt bound (C2)", K::Generic, P::None, false, false},
      {"check_refinement", "(Refinement)", K::Generic, P::None, false, false},
      {"check_uin", "(UIN1)", K::NormalCommuting, P::None, true, false},
      {"check_interp", "Theorem (InterP)", K::Generic, P::Exponents, false, false},
      {"check_naopaka", "Theorem (Naopaka)", K::NormalContractive, P::None, true, true},
      {"check_alpha", "(AOTalpha)", K::NormalContractive, P::Alpha, true, true},
      {"check_defect", "Delta-defect theorem", K::Contractive, P::Exponents, false, true},
      {"check_gruss", "(Gruss3), (GrussMm)", K::Gruss, P::None, true, false},
      {"check_radius_submult", "spectral radius remark", K::Generic, P::None, false, false},
  };
  return registry;
}

const CheckInfo& find_check(std::string_view name) {
  for (const CheckInfo& c : check_registry())
    if (c.name == name) return c;
  throw Error(ErrorCode::UnknownCheck, "no check named '" + std::string(name) + "'");
}

namespace {

double param_or(const std::map<std::string, double>& params, const char* key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

InequalityReport evaluate(std::string_view check, const Instance& in, const std::map<std::string, double>& params,
                          const CheckOptions& opts) {
  const CheckInfo& info = find_check(check);
  const Exponents ex{param_or(params, "p", 2.0), param_or(params, "q", 2.0), param_or(params, "r", 2.0)};
  const double alpha = param_or(params, "alpha", 0.5);

  InequalityReport r;
  if (check == "check_cs") r = check_cs(in.x, in.y, opts);
  else if (check == "check_basic") r = check_basic(in.x, in.y, in.a, opts);
  else if (check == "check_hs") r = check_hs(in.x, in.y, in.a, opts);
  else if (check == "check_refinement") r = check_refinement(in.x, in.y, in.a, opts);
  else if (check == "check_uin") r = check_uin(in.x, in.y, in.a, opts);
  else if (check == "check_interp") r = check_interp(in.x, in.y, in.a, ex, opts);
  else if (check == "check_naopaka") r = check_naopaka(in.x, in.y, in.a, opts);
  else if (check == "check_alpha") r = check_alpha(in.x, in.y, in.a, alpha, opts);
  else if (check == "check_defect") r = check_defect(in.x, in.y, in.a, ex, opts);
  else if (check == "check_gruss") {
    if (!in.e) throw Error(ErrorCode::InvalidSpec, "check_gruss needs a reference element e");
    r = check_gruss(in.x, in.y, in.a, GrussContext(*in.e, opts.tol), in.ball, opts);
  } else {
    const CMatrix probes[] = {in.a, in.a.adjoint()};
    r = check_radius_submult(in.x, in.y, probes, opts);
  }

  r.seed = in.seed;
  if (info.params == CheckParams::Exponents) r.params = {{"p", ex.p}, {"q", ex.q}, {"r", ex.r}};
  if (info.params == CheckParams::Alpha) r.params = {{"alpha", alpha}};
  return r;
}

InequalityReport replay(const InstanceRecord& rec, const ToleranceConfig& tol) {
  CheckOptions opts{!rec.drop_normality, !rec.drop_contraction, tol};
  return evaluate(rec.check, rec.instance, rec.params, opts);
}

void RunConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidSpec, "trials must be >= 1");
  if (checks.empty()) throw Error(ErrorCode::InvalidSpec, "no checks selected");
  for (const std::string& c : checks) find_check(c);
  for (const Exponents& e : exponent_grid) e.validate();
  for (double a : alpha_grid)
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidSpec, "alpha must be > 0");
  if (dim < 0 || dim > 8 || len > 6) throw Error(ErrorCode::InvalidSpec, "dim/len out of range");
  tol.validate();
}

bool SuiteSummary::any_fail() const {
  for (const auto& [name, c] : per_check)
    if (c.fail > 0) return true;
  return false;
}

std::pair<Eigen::Index, std::size_t> trial_shape(const RunConfig& cfg, std::uint64_t seed) {
  const std::uint64_t h = mix64(seed ^ 0x7368617065ULL);
  const Eigen::Index d = cfg.dim > 0 ? cfg.dim : static_cast<Eigen::Index>(1 + h % 6);
  const std::size_t n = cfg.len > 0 ? cfg.len : static_cast<std::size_t>(1 + (h >> 32) % 4);
  return {d, n};
}

namespace {

struct Outcome {
  std::string check;
  std::optional<InequalityReport> report;
  std::string error;  // error code name when report is empty
};

std::vector<std::map<std::string, double>> variants(const RunConfig& cfg, const CheckInfo& info) {
  std::vector<std::map<std::string, double>> out;
  switch (info.params) {
    case CheckParams::None: out.emplace_back(); break;
    case CheckParams::Exponents:
      for (const Exponents& e : cfg.exponent_grid) out.push_back({{"p", e.p}, {"q", e.q}, {"r", e.r}});
      break;
    case CheckParams::Alpha:
      for (double a : cfg.alpha_grid) out.push_back({{"alpha", a}});
      break;
  }
  return out;
}

std::vector<Outcome> run_trial(const RunConfig& cfg, int trial) {
  const std::uint64_t seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  const auto [dim, len] = trial_shape(cfg, seed);
  const CheckOptions opts{true, true, cfg.tol};
  std::vector<Outcome> out;
  for (const std::string& name : cfg.checks) {
    const CheckInfo& info = find_check(name);
    GeneratorSpec spec;
    spec.seed = seed;
    spec.dim = dim;
    spec.len = len;
    spec.kind = cfg.kind.value_or(info.kind);
    spec.random_weights = cfg.random_weights;

    std::optional<Instance> instance;
    std::string gen_error;
    try {
      instance = gen_instance(spec);
    } catch (const Error& e) {
      gen_error = std::string(to_string(e.code()));
    }
    for (const auto& params : variants(cfg, info)) {
      Outcome o{name, std::nullopt, gen_error};
      if (instance) {
        try {
          o.report = evaluate(name, *instance, params, opts);
        } catch (const Error& e) {
          o.error = std::string(to_string(e.code()));
        } catch (const std::exception&) {
          o.error = "Internal";
        }
      }
      out.push_back(std::move(o));
    }
  }
  return out;
}

SuiteSummary collect(const RunConfig& cfg, const std::vector<std::vector<Outcome>>& results, std::ostream* jsonl) {
  std::ofstream file;
  if (!jsonl && !cfg.output_path.empty()) {
    file.open(cfg.output_path);
    if (!file) throw Error(ErrorCode::IOFailure, "cannot open '" + cfg.output_path + "'");
    jsonl = &file;
  }
  SuiteSummary summary;
  for (const std::string& c : cfg.checks) summary.per_check[c];
  for (const auto& trial : results) {
    for (const Outcome& o : trial) {
      CheckCounts& counts = summary.per_check[o.check];
      if (!o.report) {
        ++counts.error;
        ++counts.errors_by_code[o.error];
        continue;
      }
      (o.report->holds ? counts.pass : counts.fail) += 1;
      if (jsonl) *jsonl << report_to_json(*o.report).dump() << '\n';
    }
  }
  if (jsonl && !*jsonl) throw Error(ErrorCode::IOFailure, "writing reports failed");
  return summary;
}

}  // namespace

SuiteSummary run_suite(const RunConfig& cfg, std::ostream* jsonl) {
  cfg.validate();
  std::vector<std::vector<Outcome>> results(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < cfg.trials; ++t) results[static_cast<std::size_t>(t)] = run_trial(cfg, t);
  return collect(cfg, results, jsonl);
}

SuiteSummary run_suite_serial(const RunConfig& cfg, std::ostream* jsonl) {
  cfg.validate();
  std::vector<std::vector<Outcome>> results(static_cast<std::size_t>(cfg.trials));
  for (int t = 0; t < cfg.trials; ++t) results[static_cast<std::size_t>(t)] = run_trial(cfg, t);
  return collect(cfg, results, jsonl);
}

}  // namespace opineq
