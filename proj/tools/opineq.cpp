// Command-line front end: verify, search, replay, list.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "opineq/suite.hpp"

using namespace opineq;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

Exponents parse_pqr(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw Error(ErrorCode::BadExponents, "expected \"p,q,r\", got \"" + s + "\"");
  return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
}

void print_summary(const SuiteSummary& summary) {
  std::printf("%-22s %8s %8s %8s\n", "check", "pass", "fail", "error");
  for (const auto& [name, c] : summary.per_check) {
    std::printf("%-22s %8d %8d %8d", name.c_str(), c.pass, c.fail, c.error);
    for (const auto& [code, n] : c.errors_by_code) std::printf("  %s=%d", code.c_str(), n);
    std::printf("\n");
  }
}

void print_report(const InequalityReport& r) {
  std::printf("%s: lhs=%.17g rhs=%.17g margin=%.6e (worst branch %s) holds=%s\n", r.name.c_str(), r.lhs, r.rhs,
              r.margin, r.worst_branch.c_str(), r.holds ? "true" : "false");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized verification of operator inequalities on matrix-tuple modules"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run checks over random instances");
  std::string checks_arg = "all";
  RunConfig run;
  double tol_rel = run.tol.tol_rel;
  std::vector<std::string> pqr_args;
  std::vector<double> alpha_args;
  std::string weights = "uniform";
  std::string kind_arg;
  bool serial = false;
  int dim = 0, len = 0;
  verify->add_option("--checks", checks_arg, "comma-separated check names, or 'all'");
  verify->add_option("--trials", run.trials, "instances per check")->check(CLI::PositiveNumber);
  verify->add_option("--dim", dim, "matrix dimension (default: random in [1,6])")->check(CLI::Range(1, 8));
  verify->add_option("--len", len, "tuple length (default: random in [1,4])")->check(CLI::Range(1, 6));
  verify->add_option("--seed", run.seed, "master seed");
  verify->add_option("--tol", tol_rel, "relative tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--pqr", pqr_args, "exponent triple \"p,q,r\" (repeatable)");
  verify->add_option("--alpha", alpha_args, "fractional power (repeatable)");
  verify->add_option("--out", run.output_path, "JSONL report file");
  verify->add_option("--weights", weights, "slot weights")->check(CLI::IsMember({"uniform", "random"}));
  verify->add_option("--kind", kind_arg, "override the instance family of every check");
  verify->add_flag("--serial", serial, "single-threaded reference path");

  // search
  auto* search = app.add_subcommand("search", "hill-climb towards a counterexample");
  SearchConfig scfg;
  std::vector<std::string> drops;
  std::string search_out;
  std::string search_pqr;
  double search_alpha = 0.0;
  search->add_option("--check", scfg.check, "check name")->required();
  search->add_option("--drop", drops, "hypothesis to drop (repeatable)")
      ->check(CLI::IsMember({"normality", "contraction"}));
  search->add_option("--budget", scfg.budget, "number of evaluations")->check(CLI::PositiveNumber);
  search->add_option("--seed", scfg.seed, "seed");
  search->add_option("--dim", scfg.dim, "matrix dimension")->check(CLI::Range(1, 8));
  search->add_option("--len", scfg.len, "tuple length")->check(CLI::Range(1, 6));
  search->add_option("--pqr", search_pqr, "exponent triple for check_interp/check_defect");
  search->add_option("--alpha", search_alpha, "alpha for check_alpha");
  search->add_option("--out", search_out, "write the best instance here");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "re-evaluate a serialized instance");
  std::string instance_path;
  replay_cmd->add_option("--instance", instance_path, "instance JSON")->required();

  app.add_subcommand("list", "print available checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("list")) {
      for (const CheckInfo& c : check_registry())
        std::printf("%-22s %s\n", std::string(c.name).c_str(), std::string(c.anchor).c_str());
      return 0;
    }

    if (verify->parsed()) {
      if (checks_arg == "all") {
        for (const CheckInfo& c : check_registry()) run.checks.emplace_back(c.name);
      } else {
        run.checks = split(checks_arg, ',');
      }
      run.tol.tol_rel = tol_rel;
      run.dim = dim;
      run.len = static_cast<std::size_t>(len);
      run.random_weights = weights == "random";
      if (!kind_arg.empty()) run.kind = generator_kind_from_string(kind_arg);
      if (!pqr_args.empty()) {
        run.exponent_grid.clear();
        for (const auto& s : pqr_args) run.exponent_grid.push_back(parse_pqr(s));
      }
      if (!alpha_args.empty()) run.alpha_grid = alpha_args;
      const SuiteSummary summary = serial ? run_suite_serial(run) : run_suite(run);
      print_summary(summary);
      return summary.any_fail() ? 1 : 0;
    }

    if (search->parsed()) {
      for (const auto& d : drops) (d == "normality" ? scfg.drop_normality : scfg.drop_contraction) = true;
      if (!search_pqr.empty()) {
        const Exponents e = parse_pqr(search_pqr);
        scfg.params = {{"p", e.p}, {"q", e.q}, {"r", e.r}};
      }
      if (search_alpha > 0.0) scfg.params = {{"alpha", search_alpha}};
      const SearchResult res = search_counterexample(scfg);
      std::printf("evaluations=%d restarts=%d rejected=%d\n", res.evaluations, res.restarts, res.rejected_errors);
      print_report(res.best);
      std::printf("%s\n", report_to_json(res.best).dump().c_str());
      if (!search_out.empty()) write_record(search_out, res.record);
      // a failure with every hypothesis in place is a bug, not a finding
      const bool hypotheses_kept = !scfg.drop_normality && !scfg.drop_contraction;
      return hypotheses_kept && !res.best.holds ? 1 : 0;
    }

    if (replay_cmd->parsed()) {
      const InstanceRecord rec = read_record(instance_path);
      const InequalityReport r = replay(rec);
      print_report(r);
      std::printf("%s\n", report_to_json(r).dump().c_str());
      return r.holds ? 0 : 1;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.code()) {
      case ErrorCode::UnknownCheck:
      case ErrorCode::InvalidSpec:
      case ErrorCode::BadExponents:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
