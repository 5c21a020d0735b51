#include "singosc4/symtri.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "singosc4/errors.hpp"

namespace singosc4 {

Eigen::MatrixXd SymTriMatrix::dense() const {
  const int n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = offdiag[i];
  return m;
}

double SymTriMatrix::norm_inf() const {
  const int n = size();
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag[i - 1]);
    if (i + 1 < n) row += std::abs(offdiag[i]);
    r = std::max(r, row);
  }
  return r;
}

SymTriEigen symtri_eigen(const SymTriMatrix& t, EigenvectorMode mode) {
  const int n = t.size();
  if (static_cast<int>(t.offdiag.size()) != std::max(0, n - 1)) {
    throw DomainError("symtri_eigen: offdiag must have length n-1");
  }
  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = t.offdiag[i];

  const int rows = mode == EigenvectorMode::full ? n : (mode == EigenvectorMode::first_row ? 1 : 0);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(rows, n);
  for (int i = 0; i < rows; ++i) z(i, i) = 1.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_iter = 60;
  double f = 0.0, tst1 = 0.0;
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iter) {
          throw ConvergenceError("symtri_eigen: QL iteration did not converge",
                                 "eigenvalue index " + std::to_string(l) + " of " + std::to_string(n));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (int k = 0; k < rows; ++k) {
            h = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * h;
            z(k, i) = c * z(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

  SymTriEigen out;
  out.values.resize(n);
  out.vectors.resize(rows, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    if (rows > 0) out.vectors.col(k) = z.col(order[k]);
  }
  return out;
}

int sturm_count(const SymTriMatrix& t, double x) {
  const int n = t.size();
  constexpr double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = 1.0;
  for (int i = 0; i < n; ++i) {
    const double b2 = i > 0 ? t.offdiag[i - 1] * t.offdiag[i - 1] : 0.0;
    q = t.diag[i] - x - (i > 0 ? b2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

double bisect_eigenvalue(const SymTriMatrix& t, int k, double tol) {
  const int n = t.size();
  if (k < 0 || k >= n) throw DomainError("bisect_eigenvalue: index out of range");
  // Gershgorin interval
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(t.offdiag[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double floor_tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t.norm_inf());
  tol = std::max(tol, floor_tol);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace singosc4
