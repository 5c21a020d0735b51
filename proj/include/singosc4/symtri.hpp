#pragma once

#include <vector>

#include <Eigen/Dense>

namespace singosc4 {

/// Real symmetric tridiagonal matrix; offdiag[i] couples rows i and i+1.
struct SymTriMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  int size() const { return static_cast<int>(diag.size()); }
  Eigen::MatrixXd dense() const;
  double norm_inf() const;
};

enum class EigenvectorMode { full, first_row, none };

struct SymTriEigen {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;     // columns; one row in first_row mode, empty in none
};

/// Implicit QL with Wilkinson-type shifts (tql2 family).
SymTriEigen symtri_eigen(const SymTriMatrix& t, EigenvectorMode mode = EigenvectorMode::full);

/// Number of eigenvalues strictly below x (Sturm sequence / LDLᵀ inertia).
int sturm_count(const SymTriMatrix& t, double x);

/// k-th smallest eigenvalue by Sturm bisection.
double bisect_eigenvalue(const SymTriMatrix& t, int k, double tol = 0.0);

}  // namespace singosc4
