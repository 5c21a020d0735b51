#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "singosc4/model.hpp"

namespace singosc4 {

enum class CoefficientMethod { three_f2, cg, quadrature };

std::string to_string(CoefficientMethod m);
/// "3f2", "cg", "quad"; throws DomainError otherwise.
CoefficientMethod parse_coefficient_method(const std::string& s);

/// W[N1][j] for one (N, sector); rows follow list_polar_states, columns
/// list_euler_states.
struct CoefficientTable {
  int N = 0;
  SectorParams sector;
  std::vector<PolarQN> rows;
  std::vector<EulerQN> cols;
  Eigen::MatrixXd values;

  int size() const { return static_cast<int>(rows.size()); }
};

/// Closed form through the terminating ₃F₂.
double w_coeff_3f2(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec);
/// Closed form through the continued Clebsch-Gordan coefficient.
double w_coeff_cg(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec);
/// Coefficient of ψ_polar in the expansion of ψ_euler; equals W[N1][j].
double w_inverse(const EulerQN& euler, const PolarQN& polar, const SectorParams& sec);

// Literal readings of the printed expressions. These can throw DomainError
// (non-terminating or singular series) and are only used for the discrepancy report.
double w_coeff_3f2_printed(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec);
double w_coeff_cg_printed(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec);
double w_inverse_printed(const EulerQN& euler, const PolarQN& polar, const SectorParams& sec);

/// Quadrature backend delegates to the oracle; params only matter there.
CoefficientTable coefficient_table(int N, const SectorParams& sec, CoefficientMethod method,
                                   const SystemParams& params = {});

/// W̃[j][N1] from w_inverse.
Eigen::MatrixXd inverse_table(int N, const SectorParams& sec);

}  // namespace singosc4
