#include "singosc4/interbasis.hpp"

#include <cmath>

#include "singosc4/errors.hpp"
#include "singosc4/oracle.hpp"
#include "singosc4/specfun.hpp"

namespace singosc4 {

std::string to_string(CoefficientMethod m) {
  switch (m) {
    case CoefficientMethod::three_f2: return "3f2";
    case CoefficientMethod::cg: return "cg";
    case CoefficientMethod::quadrature: return "quad";
  }
  return "?";
}

CoefficientMethod parse_coefficient_method(const std::string& s) {
  if (s == "3f2") return CoefficientMethod::three_f2;
  if (s == "cg") return CoefficientMethod::cg;
  if (s == "quad") return CoefficientMethod::quadrature;
  throw DomainError("unknown coefficient method '" + s + "' (expected 3f2, cg or quad)");
}

namespace {

struct Pair {
  int N, N1, N2;
  double j;
};

Pair check_pair(const PolarQN& p, const EulerQN& e, const SectorParams& sec) {
  check_admissible(p, sec);
  check_admissible(e, sec);
  if (p.N() != e.N) {
    throw DomainError("polar state at N=" + std::to_string(p.N()) + " and Euler state at N=" + std::to_string(e.N));
  }
  return {e.N, p.N1, p.N2, e.j.value()};
}

double lf(double x) { return ln_gamma(x + 1.0); }

int sign_of(int k) { return k % 2 ? -1 : 1; }

}  // namespace

double w_coeff_3f2(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec) {
  const auto [N, N1, N2, j] = check_pair(polar, euler, sec);
  const double d = sec.delta(), mp = sec.m_plus.value(), mm = sec.m_minus.value();
  const double m1 = sec.m1, m2 = sec.m2;
  const double lsq = std::log(2 * j + d + 1) + lf(N1 + m1) + lf(N2 + m2) + lf(j + mm + sec.delta1) +
                     lf(j + mp + d) - lf(N1) - lf(N2) - lf(0.5 * N - j) - lf(j - mp) -
                     lf(j - mm + sec.delta2) - lf(0.5 * N + j + d + 1);
  const double lpre = 0.5 * lsq + lf(0.5 * N - mp) - lf(m1);
  const double f = hyp3f2_unit_terminating(-N1, -j + mp, j + mp + d + 1, m1 + 1, -0.5 * N + mp);
  return sec.phase() * std::exp(lpre) * f;
}

double w_coeff_cg(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec) {
  const auto [N, N1, N2, j] = check_pair(polar, euler, sec);
  const double mm = sec.m_minus.value();
  const double a = (N - 2 * mm + 2 * sec.delta2) / 4, b = (N + 2 * mm + 2 * sec.delta1) / 4;
  const double alpha = (sec.m2 + N2 - N1) / 2, beta = (sec.m1 + N1 - N2) / 2;
  const double c = j + sec.delta() / 2, gamma = (sec.m1 + sec.m2) / 2;
  return sign_of(N1) * sec.phase() * clebsch_gordan_continued(a, alpha, b, beta, c, gamma);
}

double w_inverse(const EulerQN& euler, const PolarQN& polar, const SectorParams& sec) {
  const auto [N, N1, N2, j] = check_pair(polar, euler, sec);
  const double mm = sec.m_minus.value();
  const double a = (N - 2 * mm + 2 * sec.delta2) / 4, b = (N + 2 * mm + 2 * sec.delta1) / 4;
  const double c = j + sec.delta() / 2, gamma = (sec.m1 + sec.m2) / 2;
  const double alpha = a - N1, beta = gamma - alpha;
  return sign_of(N1) * sec.phase() * clebsch_gordan_continued(a, alpha, b, beta, c, gamma);
}

double w_coeff_3f2_printed(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec) {
  const auto [N, N1, N2, j] = check_pair(polar, euler, sec);
  const double d = sec.delta(), mp = sec.m_plus.value(), mm = sec.m_minus.value();
  const double m1 = sec.m1, m2 = sec.m2;
  const double l1 = std::log(2 * j + d + 1) + lf(N1 + m1) + lf(N2 + m2) - lf(N1) - lf(N2) - lf(0.5 * N - j) -
                    lf(j - mp) - lf(j + mm + sec.delta2);
  const double l2 = lf(j - mm + sec.delta1) + lf(j + mp + d) - lf(0.5 * N + j + d);
  const double lpre = 0.5 * (l1 + l2) + lf(0.5 * N - mp) - lf(m1);
  const double f = hyp3f2_unit_terminating(-N1, -j + mp, j + mp + d + 1, m1 + 1, -0.5 * N + mp + 1);
  return std::exp(lpre) * f;
}

double w_coeff_cg_printed(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec) {
  const auto [N, N1, N2, j] = check_pair(polar, euler, sec);
  const double mm = sec.m_minus.value();
  const double a = (N + 2 * mm + 2 * sec.delta2 - 2) / 4, b = (N - 2 * mm + 2 * sec.delta1 - 2) / 4;
  const double alpha = (sec.m2 + N2 - N1) / 2, beta = (sec.m1 + N1 - N2) / 2;
  const double c = j + sec.delta() / 2, gamma = (sec.m1 + sec.m2) / 2;
  return sign_of(N1) * sec.phase() * clebsch_gordan_continued(a, alpha, b, beta, c, gamma);
}

double w_inverse_printed(const EulerQN& euler, const PolarQN& polar, const SectorParams& sec) {
  const auto [N, N1, N2, j] = check_pair(polar, euler, sec);
  const double mm = sec.m_minus.value();
  const double a = (N + 2 * mm + 2 * sec.delta2 - 2) / 4, b = (N - 2 * mm + 2 * sec.delta1 - 2) / 4;
  const double alpha = a - N1;
  const double beta = N1 + std::abs(sec.M2) - (N - 2 * mm - 2 * sec.delta1 - 2) / 4;
  const double c = j + sec.delta() / 2, gamma = (sec.m1 + sec.m2) / 2;
  return sign_of(N1) * sec.phase() * clebsch_gordan_continued(a, alpha, b, beta, c, gamma);
}

CoefficientTable coefficient_table(int N, const SectorParams& sec, CoefficientMethod method,
                                   const SystemParams& params) {
  if (method == CoefficientMethod::quadrature) return quadrature_table(N, sec, params).table;
  CoefficientTable t;
  t.N = N;
  t.sector = sec;
  t.rows = list_polar_states(N, sec);
  t.cols = list_euler_states(N, sec);
  const int n = t.size();
  t.values.resize(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      t.values(r, c) = method == CoefficientMethod::cg ? w_coeff_cg(t.rows[r], t.cols[c], sec)
                                                       : w_coeff_3f2(t.rows[r], t.cols[c], sec);
    }
  }
  return t;
}

Eigen::MatrixXd inverse_table(int N, const SectorParams& sec) {
  const auto rows = list_polar_states(N, sec);
  const auto cols = list_euler_states(N, sec);
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < n; ++r) m(j, r) = w_inverse(cols[j], rows[r], sec);
  return m;
}

}  // namespace singosc4
