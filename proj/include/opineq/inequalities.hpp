#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opineq/hilbert_module.hpp"
#include "opineq/transformer.hpp"
#include "opineq/uinorms.hpp"

namespace opineq {

/// Outcome of one inequality check on one instance.
///
/// `margin` is rhs − lhs (or eigmin(rhs − lhs) for Löwner-order checks) of
/// the worst branch, the branch with the smallest margin/scale. `holds` is
/// true iff every gating branch satisfies margin ≥ −tol_rel·scale.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double scale = 1.0;
  bool holds = false;
  std::string worst_branch;

  /// Per-branch margins, keyed by branch/norm name ("ky_fan_2", "trace", ...).
  std::map<std::string, double> norm_detail;
  /// Non-gating numbers: Schatten spot checks, ε-sensitivity, ...
  std::map<std::string, double> diagnostics;

  // instance metadata, filled in by the harness
  std::uint64_t seed = 0;
  Eigen::Index dim = 0;
  std::size_t len = 0;
  std::map<std::string, double> params;

  double relative_margin() const { return margin / scale; }
};

/// Which hypotheses a check enforces before evaluating. The counterexample
/// search turns these off to evaluate a check outside its theorem.
struct CheckOptions {
  bool require_normality = true;
  bool require_contraction = true;
  ToleranceConfig tol{};
};

struct Exponents {
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;

  /// p, q, r > 1 and |1/q + 1/r − 2/p| ≤ 1e−12, else BadExponents.
  void validate() const;
};

struct GrussBall {
  double m = 0.0;
  double M = 1.0;
  double p = 0.0;
  double P = 1.0;
};

/// Contraction margin enforced by the normal-contractive checks: ⟨x,x⟩ ≤ (1 − 1e−3)·I.
inline constexpr double kContractionMargin = 1e-3;

/// |⟨x,y⟩|² ≤ ‖x‖²⟨y,y⟩ and |⟨x,y⟩| ≤ ‖x‖⟨y,y⟩^{1/2} in the Löwner order.
InequalityReport check_cs(const ModuleElement& x, const ModuleElement& y, const CheckOptions& opts = {});

/// ‖⟨x,ay⟩‖ ≤ ‖x‖‖y‖‖a‖ and ‖⟨x,ay⟩‖₁ ≤ ‖⟨x̄,x̄⟩^{1/2} a ⟨ȳ,ȳ⟩^{1/2}‖₁.
InequalityReport check_basic(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                             const CheckOptions& opts = {});

/// ‖⟨x,ay⟩‖₂ ≤ ‖x‖‖a⟨ȳ,ȳ⟩^{1/2}‖₂ and ‖⟨x,ay⟩‖₂ ≤ ‖y‖‖⟨x̄,x̄⟩^{1/2}a‖₂.
InequalityReport check_hs(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                          const CheckOptions& opts = {});

/// |⟨x,ay⟩|² ≤ ‖x‖²⟨y, a*a y⟩ in the Löwner order.
InequalityReport check_refinement(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                                  const CheckOptions& opts = {});

/// |||⟨x,ay⟩||| ≤ |||⟨x,x⟩^{1/2} a ⟨y,y⟩^{1/2}||| for normal x, y, certified
/// over the whole Ky Fan family.
InequalityReport check_uin(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                           const CheckOptions& opts = {});

/// ‖⟨x,ay⟩‖_p ≤ ‖⟨⟨x,x⟩^{q−1}x̄,x̄⟩^{1/2q} a ⟨⟨y,y⟩^{r−1}ȳ,ȳ⟩^{1/2r}‖_p with
/// 1/q + 1/r = 2/p. No normality needed.
InequalityReport check_interp(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                              const Exponents& e, const CheckOptions& opts = {});

/// |||(1−⟨x,x⟩)^{1/2} a (1−⟨y,y⟩)^{1/2}||| ≤ |||a − ⟨x,ay⟩||| for normal
/// contractive x, y.
InequalityReport check_naopaka(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                               const CheckOptions& opts = {});

/// |||(1−⟨x,x⟩)^{α/2} a (1−⟨y,y⟩)^{α/2}||| ≤ |||(I − T)^α a|||.
InequalityReport check_alpha(const ModuleElement& x, const ModuleElement& y, const CMatrix& a, double alpha,
                             const CheckOptions& opts = {});

/// ‖Δ_x^{1−1/q} a Δ_y^{1−1/r}‖_p ≤ ‖Δ_x̄^{−1/q}(a − ⟨x,ay⟩)Δ_ȳ^{−1/r}‖_p.
InequalityReport check_defect(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                              const Exponents& e, const CheckOptions& opts = {});

/// Grüss bound |||Φ(x,ay)||| ≤ |||Φ(x,x)^{1/2} a Φ(y,y)^{1/2}|||, plus the
/// ball form |||Φ(x,ay)||| ≤ ¼|||a||| |M−m||P−p| when `ball` is given.
InequalityReport check_gruss(const ModuleElement& x, const ModuleElement& y, const CMatrix& a,
                             const GrussContext& g, const std::optional<GrussBall>& ball,
                             const CheckOptions& opts = {});

/// r(T_{x,y})² ≤ r(T_{x,x}) r(T_{y,y}), and the probed lower bound on
/// ‖T_{x,y}‖ never exceeds ‖x‖‖y‖.
InequalityReport check_radius_submult(const ModuleElement& x, const ModuleElement& y,
                                      std::span<const CMatrix> probes = {}, const CheckOptions& opts = {});

/// Rescales x and y to module norm δ for each δ and runs check_naopaka.
/// Diagnostic only: reports are returned in δ order, no sign is asserted.
std::vector<InequalityReport> naopaka_delta_sweep(const ModuleElement& x, const ModuleElement& y,
                                                  const CMatrix& a, std::span<const double> deltas,
                                                  const CheckOptions& opts = {});

/// (K + ε‖K‖I)^{1/2q} with K = ⟨⟨x,x⟩^{q−1}x̄, x̄⟩, evaluated from the SVD of the
/// stacked factor of x so that high powers keep relative accuracy.
CMatrix interp_weight(const ModuleElement& x, double q, double eps = 0.0);

/// x − e⟨e,x⟩
ModuleElement gruss_center(const ModuleElement& x, const GrussContext& g);

}  // namespace opineq
