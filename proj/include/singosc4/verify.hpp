#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace singosc4 {

struct CheckResult {
  std::string criterion;  // "c1" ... "c10"
  std::string name;       // "c1.w_3f2_vs_cg"
  double measured = 0.0;
  double bound = 0.0;
  bool strict = true;     // measured < bound, else measured <= bound
  bool pass = false;
};

struct CriterionInfo {
  std::string id;
  std::string title;
};

/// The ten acceptance criteria, in order.
const std::vector<CriterionInfo>& criteria();
/// Every check name with its default bound.
const std::map<std::string, double>& default_bounds();

struct VerifyConfig {
  /// "all", criterion ids ("c3") or titles ("orthogonality").
  std::vector<std::string> suites{"all"};
  /// Bound for the quadrature-table checks (c2 and the quadrature half of c3).
  double quad_tol = 1e-8;
  /// Per-check bound overrides by check name.
  std::map<std::string, double> overrides;
  /// "" or "cg": perturbs one closed-form CG table entry by 1e-6.
  std::string inject_fault;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  /// Literal printed constants, coefficients, matrices and recursions
  /// compared with the verified ones.
  nlohmann::json printed = nlohmann::json::object();

  bool passed() const;
  /// Criteria that ran, with pass = all of their checks pass.
  std::vector<std::pair<CriterionInfo, bool>> criterion_results() const;
  nlohmann::json to_json(const VerifyConfig& config) const;
};

/// Throws DomainError for unknown suites, overrides or faults, and lets
/// ConvergenceError through.
VerifyReport run_verify(const VerifyConfig& config);

/// The literal-formula report alone (deterministic).
nlohmann::json printed_report();

}  // namespace singosc4
