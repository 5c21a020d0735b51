#pragma once

#include <variant>

#include <Eigen/Dense>

#include "singosc4/interbasis.hpp"
#include "singosc4/model.hpp"
#include "singosc4/quadrature.hpp"

namespace singosc4 {

struct RadialNorm {
  int N = 0;
  HalfInt j;
};
struct PolarNorm {
  int Na = 0;
  int Ma = 0;
  double delta_a = 0.0;
};
struct AngularNorm {
  HalfInt j;
};
using NormKind = std::variant<RadialNorm, PolarNorm, AngularNorm>;

/// Positive constant giving unit norm in the matching measure: u³du for the
/// radial factor, ρdρ for Φ, and (1/8)∫ sinβ dα dβ dγ for Z.
double normalize_numeric(const NormKind& kind, const SectorParams& sec, const SystemParams& params,
                         const ConvergenceProtocol& protocol = {});

struct OverlapResult {
  double value = 0.0;
  double delta = 0.0;
  int nodes = 0;
};

/// ∫ ψ*_polar ψ_euler dV by Gauss-Laguerre in x = a²u² times Gauss-Jacobi in
/// t = cos β. The (α, γ) integral is done analytically and gives exactly 0
/// when the polar charges differ from (m+s, m-s).
OverlapResult overlap_polar_euler(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec,
                                  const SystemParams& params, const ConvergenceProtocol& protocol = {});

struct QuadratureTable {
  CoefficientTable table;
  double max_delta = 0.0;  // largest last-doubling change over entries
  int nodes = 0;
};

/// Whole overlap matrix sharing one tensor rule, with numerically normalized
/// states throughout.
QuadratureTable quadrature_table(int N, const SectorParams& sec, const SystemParams& params,
                                 const ConvergenceProtocol& protocol = {});

/// Flips column signs of `table` to agree with `reference` (by the sign of
/// the column inner product); returns the number of flips.
int align_columns(Eigen::MatrixXd& table, const Eigen::MatrixXd& reference);

enum class Operator { lambda, omega };
enum class Basis { euler, polar };

/// Operator matrix in the requested basis at level N, built from the known
/// diagonal spectra and the quadrature W table only.
Eigen::MatrixXd matrix_element_numeric(Operator op, Basis basis, int N, const SectorParams& sec,
                                       const SystemParams& params);

}  // namespace singosc4
