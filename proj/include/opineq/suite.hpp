#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opineq/generators.hpp"
#include "opineq/inequalities.hpp"
#include "opineq/serialize.hpp"

namespace opineq {

enum class CheckParams { None, Exponents, Alpha };

struct CheckInfo {
  std::string_view name;
  std::string_view anchor;
  GeneratorKind kind;  // instance family that satisfies the hypotheses
  CheckParams params;
  bool needs_normality;
  bool needs_contraction;
};

const std::vector<CheckInfo>& check_registry();

/// Throws UnknownCheck.
const CheckInfo& find_check(std::string_view name);

/// Runs `check` on `in`. `params` carries p, q, r or alpha as the check
/// needs; missing values fall back to (2,2,2) and 0.5.
InequalityReport evaluate(std::string_view check, const Instance& in, const std::map<std::string, double>& params,
                          const CheckOptions& opts = {});

InequalityReport replay(const InstanceRecord& rec, const ToleranceConfig& tol = {});

struct RunConfig {
  int trials = 100;
  std::vector<std::string> checks;
  ToleranceConfig tol{};
  std::vector<Exponents> exponent_grid{{2, 2, 2}, {3, 2, 6}, {4, 4, 4}, {1.5, 1.5, 1.5}};
  std::vector<double> alpha_grid{0.5, 1.0, 2.0};
  std::string output_path;
  std::uint64_t seed = 0;
  Eigen::Index dim = 0;  // 0: drawn per trial from [1, 6]
  std::size_t len = 0;   // 0: drawn per trial from [1, 4]
  bool random_weights = false;
  std::optional<GeneratorKind> kind;  // overrides each check's own family

  void validate() const;
};

struct CheckCounts {
  int pass = 0;
  int fail = 0;
  int error = 0;
  std::map<std::string, int> errors_by_code;
};

struct SuiteSummary {
  std::map<std::string, CheckCounts> per_check;
  bool any_fail() const;
};

/// Trials run in parallel; reports are written to `jsonl` (or to
/// cfg.output_path when `jsonl` is null and the path is set) in trial order.
SuiteSummary run_suite(const RunConfig& cfg, std::ostream* jsonl = nullptr);

/// Single-threaded reference; output is byte-identical to run_suite.
SuiteSummary run_suite_serial(const RunConfig& cfg, std::ostream* jsonl = nullptr);

/// Per-trial dimension and length when RunConfig leaves them at 0.
std::pair<Eigen::Index, std::size_t> trial_shape(const RunConfig& cfg, std::uint64_t trial_seed);

struct SearchConfig {
  std::string check;
  bool drop_normality = false;
  bool drop_contraction = false;
  int budget = 1000;
  std::uint64_t seed = 0;
  Eigen::Index dim = 3;
  std::size_t len = 2;
  std::map<std::string, double> params;
};

struct SearchResult {
  InequalityReport best;
  InstanceRecord record;
  int evaluations = 0;
  int rejected_errors = 0;
  int restarts = 0;
};

/// Random-restart hill climbing on the relative margin. Hypotheses that are
/// not dropped are restored after every step (projection onto the stored
/// eigenbasis, rescaling into the contraction or the Grüss balls).
SearchResult search_counterexample(const SearchConfig& cfg, const ToleranceConfig& tol = {});

}  // namespace opineq
