#pragma once

#include <vector>

#include <Eigen/Dense>

#include "singosc4/model.hpp"
#include "singosc4/oracle.hpp"

namespace singosc4 {

enum class MatrixSource { printed, closed_form, oracle };

/// Coupling between j-1 and j of the Ω̃ matrix in the Euler basis is -2·a_coeff(j).
/// Zero outside m+ < j ≤ N/2.
double a_coeff(HalfInt j, int N, const SectorParams& sec);
/// The literal printed A^j. NaN if its radicand is negative inside the range.
double a_coeff_printed(HalfInt j, int N, const SectorParams& sec);

/// Ω̃ over the Euler states of level N (dimensionless, Ω = 2a²Ω̃).
/// `printed` is returned as printed, hence not symmetric and possibly NaN.
Eigen::MatrixXd omega_matrix_euler(int N, const SectorParams& sec, MatrixSource source);
/// Λ over the polar states of level N.
Eigen::MatrixXd lambda_matrix_polar(int N, const SectorParams& sec, MatrixSource source);

/// Q = Λ + R·Ω̃ in the chosen basis, from the W-transform matrices.
Eigen::MatrixXd build_q_matrix(int N, const SectorParams& sec, double R, Basis basis);

struct SpheroidalSolution {
  int N = 0;
  SectorParams sector;
  double R = 0.0;
  std::vector<double> q_values;  // ascending
  Eigen::MatrixXd U;             // [q][j]
  Eigen::MatrixXd V;             // [q][N1]
  std::vector<EulerQN> euler_states;
  std::vector<PolarQN> polar_states;

  int size() const { return static_cast<int>(q_values.size()); }
};

/// Diagonalizes the Euler-basis Q. Each U row has its largest-magnitude
/// component positive; V = U·Wᵀ.
SpheroidalSolution solve_spheroidal(int N, const SectorParams& sec, double R);
/// Same from the polar-basis Q; V rows are its eigenvectors and U = V·W.
SpheroidalSolution solve_spheroidal_polar(int N, const SectorParams& sec, double R);

/// Max over q of ‖P_k(a) - P_k(b)‖ for the spectral projectors of clusters of
/// eigenvalues closer than 1e-10, on the U rows.
double projector_distance(const SpheroidalSolution& a, const SpheroidalSolution& b);

enum class RecursionSource { printed, oracle_consistent };

struct RecursionResidual {
  std::vector<double> u_residual;  // per q; NaN if every row is undefined
  std::vector<double> v_residual;
  int undefined_rows = 0;          // rows whose printed coefficients are undefined

  double max_u() const;
  double max_v() const;
};

/// Three-term recursions in the R-multiplied form
///   R(A^{j+1}U^{j+1} + A^j U^{j-1}) = (Q - λ_j - R·D_j) U^j
///   (Λ_{N1N1} + R·Ω̃(N1) - Q) V^{N1} = off-diagonal terms.
RecursionResidual recursion_residual(const SpheroidalSolution& sol, RecursionSource source);

}  // namespace singosc4
