#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace singosc4 {

enum class QuadratureKind { legendre, laguerre, jacobi };

/// Weight family: legendre on [-1,1]; laguerre x^alpha e^{-x} on [0,inf);
/// jacobi (1-t)^alpha (1+t)^beta on [-1,1].
struct QuadratureSpec {
  QuadratureKind kind = QuadratureKind::legendre;
  double alpha = 0.0;
  double beta = 0.0;

  static QuadratureSpec legendre() { return {QuadratureKind::legendre, 0.0, 0.0}; }
  static QuadratureSpec laguerre(double alpha) { return {QuadratureKind::laguerre, alpha, 0.0}; }
  static QuadratureSpec jacobi(double a, double b) { return {QuadratureKind::jacobi, a, b}; }

  std::string str() const;
  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

struct QuadratureRule {
  QuadratureSpec spec;
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Total mass of the weight function, ∫ w.
double weight_mass(const QuadratureSpec& spec);

/// Gauss rule from the eigen-decomposition of the recurrence (Jacobi) matrix.
QuadratureRule golub_welsch(const QuadratureSpec& spec, int n);

/// Shared, immutable rule; concurrent lookups are safe.
std::shared_ptr<const QuadratureRule> cached_rule(const QuadratureSpec& spec, int n);

/// Project-wide convergence protocol for quadrature-based integrals.
struct ConvergenceProtocol {
  int start_nodes = 64;
  int max_nodes = 1024;
  double tol = 1e-10;
};

struct ConvergedValue {
  double value = 0.0;
  double delta = 0.0;  // |I(n) - I(n/2)| at acceptance
  int nodes = 0;
};

/// Evaluates integral(n) for n = start, 2·start, ... until successive values
/// differ by less than tol·max(1, |I|); throws ConvergenceError at the cap.
ConvergedValue converge_nodes(const std::function<double(int)>& integral, const std::string& what,
                              const ConvergenceProtocol& protocol = {});

}  // namespace singosc4
