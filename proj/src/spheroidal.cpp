#include "singosc4/spheroidal.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numeric>

#include "singosc4/errors.hpp"
#include "singosc4/interbasis.hpp"

namespace singosc4 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool coupling_in_range(HalfInt j, int N, const SectorParams& sec) {
  return j > sec.m_plus && j + j <= HalfInt(N) && (j - sec.m_plus).is_integer();
}

double printed_diag(double j, const SectorParams& sec) {
  const double L = 2 * j + sec.delta();
  return (sec.m1 + sec.m2) * (sec.m1 - sec.m2) / (L * (L + 2));
}

Eigen::MatrixXd w_matrix(int N, const SectorParams& sec) {
  return coefficient_table(N, sec, CoefficientMethod::cg).values;
}

void fix_signs(Eigen::MatrixXd& rows) {
  for (Eigen::Index q = 0; q < rows.rows(); ++q) {
    Eigen::Index k = 0;
    rows.row(q).cwiseAbs().maxCoeff(&k);
    if (rows(q, k) < 0) rows.row(q) *= -1.0;
  }
}

}  // namespace

double a_coeff(HalfInt j, int N, const SectorParams& sec) {
  if (!coupling_in_range(j, N, sec)) return 0.0;
  const double jj = j.value(), d = sec.delta(), mp = sec.m_plus.value(), mm = sec.m_minus.value();
  const double f1 = (jj + mm + sec.delta1) * (jj - mm + sec.delta2);
  const double f2 = (jj - mp) * (jj + mp + d) * (N - 2 * jj + 2) * (N + 2 * jj + 2 * d + 2) /
                    (4 * (jj + d / 2) * (jj + d / 2) * (2 * jj + d - 1) * (2 * jj + d + 1));
  return std::sqrt(f1) * std::sqrt(f2);
}

double a_coeff_printed(HalfInt j, int N, const SectorParams& sec) {
  if (!coupling_in_range(j, N, sec)) return 0.0;
  const double jj = j.value(), d = sec.delta(), mp = sec.m_plus.value(), mm = sec.m_minus.value();
  const double f1 = (jj - mm + sec.delta1) * (jj + mm + sec.delta2);
  const double f2 = (jj - mp) * (jj + mp + d) * (N - 2 * jj) * (N + 2 * jj + 2 * d) /
                    (4 * (jj + d / 2) * (jj + d / 2) * (2 * jj + d - 1) * (2 * jj + d + 1));
  if (f1 < 0 || f2 < 0) return kNaN;
  return std::sqrt(f1) * std::sqrt(f2);
}

Eigen::MatrixXd omega_matrix_euler(int N, const SectorParams& sec, MatrixSource source) {
  const auto states = list_euler_states(N, sec);
  const int n = static_cast<int>(states.size());
  if (source == MatrixSource::oracle) {
    const Eigen::MatrixXd Wt = inverse_table(N, sec);
    Eigen::VectorXd om(n);
    for (const auto& p : list_polar_states(N, sec)) om(p.N1) = omega_tilde(p, sec);
    if (n == 1) return om;  // a 1x1 orthogonal transform is ±1
    Eigen::MatrixXd m = Wt * om.asDiagonal() * Wt.transpose();
    return 0.5 * (m + m.transpose());
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double d = sec.delta();
  for (int i = 0; i < n; ++i) {
    const HalfInt j = states[i].j;
    const double L = 2 * j.value() + d;
    if (source == MatrixSource::printed) {
      m(i, i) = printed_diag(j.value(), sec);
      if (i + 1 < n) m(i, i + 1) = -2 * a_coeff_printed(j + 1, N, sec) / L;
      if (i > 0) m(i, i - 1) = -2 * a_coeff_printed(j, N, sec) / L;
    } else {
      m(i, i) = L == 0 ? 0.0 : (N + d + 2) * (sec.m1 * sec.m1 - sec.m2 * sec.m2) / (L * (L + 2));
      if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = -2 * a_coeff(j + 1, N, sec);
    }
  }
  return m;
}

Eigen::MatrixXd lambda_matrix_polar(int N, const SectorParams& sec, MatrixSource source) {
  const auto states = list_polar_states(N, sec);
  const int n = static_cast<int>(states.size());
  if (source == MatrixSource::oracle) {
    const Eigen::MatrixXd W = w_matrix(N, sec);
    Eigen::VectorXd lam(n);
    int c = 0;
    for (const auto& e : list_euler_states(N, sec)) lam(c++) = lambda_eigenvalue(e.j, sec);
    if (n == 1) return lam;
    Eigen::MatrixXd m = W * lam.asDiagonal() * W.transpose();
    return 0.5 * (m + m.transpose());
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double m1 = sec.m1, m2 = sec.m2, d1 = sec.delta1, d2 = sec.delta2;
  const double mp = sec.m_plus.value(), mm = sec.m_minus.value();
  for (int i = 0; i < n; ++i) {
    const double N1 = states[i].N1, N2 = states[i].N2;
    if (source == MatrixSource::printed) {
      m(i, i) = (N1 + 1) * (N2 + mm) + (0.5 * N - N1 + d2) * (N1 + std::abs(sec.M2) + d2) + mm * (mp + d2) +
                0.25 * (d1 - d2) * (d1 - d2 - 2);
      if (i + 1 < n) m(i, i + 1) = -std::sqrt(N2 * (N1 + 1) * (N1 + m1 + 1) * (N2 + m2));
      if (i > 0) m(i, i - 1) = -std::sqrt(N1 * (N2 + 1) * (N1 + m1 + 1) * (N2 + m2 + 1));
    } else {
      const double a = (N1 + N2 + m2) / 2, b = (N1 + N2 + m1) / 2;
      const double al = (m2 + N2 - N1) / 2, be = (m1 + N1 - N2) / 2;
      m(i, i) = a * (a + 1) + b * (b + 1) + 2 * al * be;
      if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = -std::sqrt(N2 * (N1 + 1) * (N1 + m1 + 1) * (N2 + m2));
    }
  }
  return m;
}

Eigen::MatrixXd build_q_matrix(int N, const SectorParams& sec, double R, Basis basis) {
  if (!(R >= 0.0)) throw DomainError("R must be nonnegative");
  if (basis == Basis::euler) {
    Eigen::MatrixXd q = R * omega_matrix_euler(N, sec, MatrixSource::oracle);
    const auto states = list_euler_states(N, sec);
    for (std::size_t i = 0; i < states.size(); ++i) q(i, i) += lambda_eigenvalue(states[i].j, sec);
    return q;
  }
  Eigen::MatrixXd q = lambda_matrix_polar(N, sec, MatrixSource::oracle);
  for (const auto& p : list_polar_states(N, sec)) q(p.N1, p.N1) += R * omega_tilde(p, sec);
  return q;
}

namespace {

SpheroidalSolution solve_in(int N, const SectorParams& sec, double R, Basis basis) {
  SpheroidalSolution sol;
  sol.N = N;
  sol.sector = sec;
  sol.R = R;
  sol.euler_states = list_euler_states(N, sec);
  sol.polar_states = list_polar_states(N, sec);
  const int n = static_cast<int>(sol.euler_states.size());
  if (n == 0) return sol;

  const Eigen::MatrixXd Q = build_q_matrix(N, sec, R, basis);
  const Eigen::MatrixXd W = w_matrix(N, sec);
  Eigen::MatrixXd vecs;
  const Eigen::MatrixXd off = Q - Eigen::MatrixXd(Q.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    // already diagonal (R = 0 in the Euler basis, or a single state): no rounding from the solver
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return Q(x, x) < Q(y, y); });
    vecs = Eigen::MatrixXd::Zero(n, n);
    for (int q = 0; q < n; ++q) {
      sol.q_values.push_back(Q(idx[q], idx[q]));
      vecs(q, idx[q]) = 1.0;
    }
  } else {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    if (es.info() != Eigen::Success) throw ConvergenceError("Q eigensolver failed", "");
    sol.q_values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    vecs = es.eigenvectors().transpose();
  }
  if (basis == Basis::euler) {
    sol.U = vecs;
    fix_signs(sol.U);
    sol.V = sol.U * W.transpose();
  } else {
    sol.U = vecs * W;
    fix_signs(sol.U);
    sol.V = sol.U * W.transpose();
  }
  return sol;
}

}  // namespace

SpheroidalSolution solve_spheroidal(int N, const SectorParams& sec, double R) {
  return solve_in(N, sec, R, Basis::euler);
}

SpheroidalSolution solve_spheroidal_polar(int N, const SectorParams& sec, double R) {
  return solve_in(N, sec, R, Basis::polar);
}

double projector_distance(const SpheroidalSolution& a, const SpheroidalSolution& b) {
  const int n = a.size();
  if (n != b.size()) throw DomainError("projector_distance: size mismatch");
  double worst = 0.0;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && a.q_values[end] - a.q_values[end - 1] < 1e-10) ++end;
    const Eigen::MatrixXd ua = a.U.middleRows(start, end - start);
    const Eigen::MatrixXd ub = b.U.middleRows(start, end - start);
    const Eigen::MatrixXd diff = ua.transpose() * ua - ub.transpose() * ub;
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    start = end;
  }
  return worst;
}

double RecursionResidual::max_u() const {
  double m = 0.0;
  for (double x : u_residual)
    if (!std::isnan(x)) m = std::max(m, x);
  return m;
}

double RecursionResidual::max_v() const {
  double m = 0.0;
  for (double x : v_residual)
    if (!std::isnan(x)) m = std::max(m, x);
  return m;
}

RecursionResidual recursion_residual(const SpheroidalSolution& sol, RecursionSource source) {
  const int n = sol.size();
  const SectorParams& sec = sol.sector;
  const double R = sol.R;
  RecursionResidual out;
  out.u_residual.assign(n, 0.0);
  out.v_residual.assign(n, 0.0);
  if (n == 0) return out;

  if (source == RecursionSource::oracle_consistent) {
    const Eigen::MatrixXd QE = build_q_matrix(sol.N, sec, R, Basis::euler);
    const Eigen::MatrixXd QP = build_q_matrix(sol.N, sec, R, Basis::polar);
    for (int q = 0; q < n; ++q) {
      const Eigen::VectorXd u = sol.U.row(q).transpose(), v = sol.V.row(q).transpose();
      out.u_residual[q] = (QE * u - sol.q_values[q] * u).cwiseAbs().maxCoeff();
      out.v_residual[q] = (QP * v - sol.q_values[q] * v).cwiseAbs().maxCoeff();
    }
    return out;
  }

  // Literal coefficients; rows where they are undefined are skipped and counted.
  const double m1 = sec.m1, m2 = sec.m2, d1 = sec.delta1, d2 = sec.delta2;
  const double mp = sec.m_plus.value(), mm = sec.m_minus.value();
  std::vector<bool> u_any(n, false), v_any(n, false);
  for (int q = 0; q < n; ++q) {
    const double Q = sol.q_values[q];
    for (int i = 0; i < n; ++i) {
      const HalfInt j = sol.euler_states[i].j;
      const double up = i + 1 < n ? sol.U(q, i + 1) : 0.0, dn = i > 0 ? sol.U(q, i - 1) : 0.0;
      const double lhs = R * (a_coeff_printed(j + 1, sol.N, sec) * up + a_coeff_printed(j, sol.N, sec) * dn);
      const double rhs = (Q - lambda_eigenvalue(j, sec) - R * printed_diag(j.value(), sec)) * sol.U(q, i);
      const double r = std::abs(lhs - rhs);
      if (std::isnan(r)) {
        if (q == 0) ++out.undefined_rows;
        continue;
      }
      out.u_residual[q] = std::max(out.u_residual[q], r);
      u_any[q] = true;
    }
    for (int i = 0; i < n; ++i) {
      const auto& p = sol.polar_states[i];
      const double N1 = p.N1, N2 = p.N2, N = sol.N;
      const double diag = (N1 + 1) * (N2 + mm) + (N - N1 + d2) * (N1 + m2) + 0.25 * (d1 - d2) * (d1 - d2 - 2) +
                          mm * (mp + d2) + R * omega_tilde(p, sec) - Q;
      const double up = i + 1 < n ? sol.V(q, i + 1) : 0.0, dn = i > 0 ? sol.V(q, i - 1) : 0.0;
      const double rhs = std::sqrt(N2 * (N1 + 1) * (N1 + m1 + 1) * (N2 + m2)) * up +
                         std::sqrt(N1 * (N2 + 1) * (N1 + m1 + 1) * (N2 + m2 + 1)) * dn;
      const double r = std::abs(diag * sol.V(q, i) - rhs);
      if (std::isnan(r)) {
        if (q == 0) ++out.undefined_rows;
        continue;
      }
      out.v_residual[q] = std::max(out.v_residual[q], r);
      v_any[q] = true;
    }
    if (!u_any[q]) out.u_residual[q] = kNaN;
    if (!v_any[q]) out.v_residual[q] = kNaN;
  }
  return out;
}

}  // namespace singosc4
