#include "singosc4/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "singosc4/errors.hpp"
#include "singosc4/specfun.hpp"
#include "singosc4/symtri.hpp"

namespace singosc4 {

std::string QuadratureSpec::str() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case QuadratureKind::legendre: os << "legendre"; break;
    case QuadratureKind::laguerre: os << "laguerre(" << alpha << ")"; break;
    case QuadratureKind::jacobi: os << "jacobi(" << alpha << "," << beta << ")"; break;
  }
  return os.str();
}

double weight_mass(const QuadratureSpec& spec) {
  switch (spec.kind) {
    case QuadratureKind::legendre: return 2.0;
    case QuadratureKind::laguerre: return std::exp(ln_gamma(spec.alpha + 1.0));
    case QuadratureKind::jacobi: {
      const double a = spec.alpha, b = spec.beta;
      return std::exp((a + b + 1.0) * std::numbers::ln2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) -
                      ln_gamma(a + b + 2.0));
    }
  }
  return 0.0;
}

namespace {

SymTriMatrix recurrence_matrix(const QuadratureSpec& spec, int n) {
  SymTriMatrix t;
  t.diag.resize(n);
  t.offdiag.resize(n > 0 ? n - 1 : 0);
  switch (spec.kind) {
    case QuadratureKind::legendre:
      for (int k = 0; k < n; ++k) t.diag[k] = 0.0;
      for (int k = 1; k < n; ++k) t.offdiag[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
      break;
    case QuadratureKind::laguerre:
      for (int k = 0; k < n; ++k) t.diag[k] = 2.0 * k + spec.alpha + 1.0;
      for (int k = 1; k < n; ++k) t.offdiag[k - 1] = std::sqrt(k * (k + spec.alpha));
      break;
    case QuadratureKind::jacobi: {
      const double a = spec.alpha, b = spec.beta, ab = a + b;
      for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        t.diag[k] = k == 0 ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
      }
      for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double b2;
        if (k == 1) {
          b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
          b2 = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        t.offdiag[k - 1] = std::sqrt(b2);
      }
      break;
    }
  }
  return t;
}

}  // namespace

QuadratureRule golub_welsch(const QuadratureSpec& spec, int n) {
  if (n < 1) throw DomainError("golub_welsch requires n >= 1");
  if (spec.kind == QuadratureKind::laguerre && !(spec.alpha > -1.0)) {
    throw DomainError("laguerre weight requires alpha > -1");
  }
  if (spec.kind == QuadratureKind::jacobi && (!(spec.alpha > -1.0) || !(spec.beta > -1.0))) {
    throw DomainError("jacobi weight requires a, b > -1");
  }
  const SymTriEigen eig = symtri_eigen(recurrence_matrix(spec, n), EigenvectorMode::first_row);
  const double mass = weight_mass(spec);
  QuadratureRule rule;
  rule.spec = spec;
  rule.nodes = eig.values;
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) rule.weights[k] = mass * eig.vectors(0, k) * eig.vectors(0, k);
  return rule;
}

std::shared_ptr<const QuadratureRule> cached_rule(const QuadratureSpec& spec, int n) {
  using Key = std::tuple<int, double, double, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;

  const Key key{static_cast<int>(spec.kind), spec.alpha, spec.beta, n};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(golub_welsch(spec, n));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

ConvergedValue converge_nodes(const std::function<double(int)>& integral, const std::string& what,
                              const ConvergenceProtocol& protocol) {
  int n = protocol.start_nodes;
  double prev = integral(n);
  std::ostringstream log;
  log.precision(17);
  log << "n=" << n << " value=" << prev << "\n";
  while (n < protocol.max_nodes) {
    n *= 2;
    const double cur = integral(n);
    const double delta = std::abs(cur - prev);
    log << "n=" << n << " value=" << cur << " delta=" << delta << "\n";
    if (delta < protocol.tol * std::max(1.0, std::abs(cur))) return {cur, delta, n};
    prev = cur;
  }
  throw ConvergenceError("quadrature did not converge: " + what, log.str());
}

}  // namespace singosc4
