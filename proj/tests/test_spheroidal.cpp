#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <cmath>
#include <vector>

#include "singosc4/errors.hpp"
#include "singosc4/interbasis.hpp"
#include "singosc4/spheroidal.hpp"

using namespace singosc4;
using doctest::Approx;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

struct Case {
  SectorParams sec;
  int N;
};

std::vector<Case> grid(int nmax, int smax_twice, std::initializer_list<double> cs = {0.0, 0.5, 2.0, 7.3}) {
  std::vector<Case> out;
  for (double c1 : cs)
    for (double c2 : cs)
      for (int tm = -smax_twice; tm <= smax_twice; ++tm)
        for (int ts = -smax_twice; ts <= smax_twice; ++ts) {
          if ((tm + ts) % 2) continue;
          SystemParams p;
          p.c1 = c1;
          p.c2 = c2;
          const auto sec = sector(p, h(tm), h(ts));
          for (int N = 0; N <= nmax; ++N)
            if (sec.n1_max(N) >= 0) out.push_back({sec, N});
        }
  return out;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

int argmax_abs(const Eigen::RowVectorXd& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  return static_cast<int>(k);
}

}  // namespace

TEST_CASE("coupling coefficient") {
  const auto s00 = sector(SystemParams{}, HalfInt(0), HalfInt(0));
  CHECK(a_coeff(HalfInt(0), 2, s00) == 0.0);  // j = m+
  CHECK(a_coeff(HalfInt(2), 2, s00) == 0.0);  // beyond N/2
  const auto om = omega_matrix_euler(2, s00, MatrixSource::oracle);
  CHECK(om(0, 1) == Approx(-2 * a_coeff(HalfInt(1), 2, s00)).epsilon(1e-13));
  CHECK(om(1, 0) == om(0, 1));
  // the literal coefficient vanishes at the top state, where the verified one does not
  CHECK(a_coeff_printed(HalfInt(1), 2, s00) == 0.0);
  CHECK(a_coeff(HalfInt(1), 2, s00) > 0.1);
}

TEST_CASE("closed-form operator matrices equal the transform oracle") {
  double worst_om = 0, worst_la = 0, worst_sym = 0;
  for (const auto& [sec, N] : grid(10, 4)) {
    const auto oe = omega_matrix_euler(N, sec, MatrixSource::oracle);
    const auto ce = omega_matrix_euler(N, sec, MatrixSource::closed_form);
    worst_om = std::max(worst_om, max_abs(oe - ce) / std::max(1.0, max_abs(oe)));
    const auto op = lambda_matrix_polar(N, sec, MatrixSource::oracle);
    const auto cp = lambda_matrix_polar(N, sec, MatrixSource::closed_form);
    worst_la = std::max(worst_la, max_abs(op - cp) / std::max(1.0, max_abs(op)));
    worst_sym = std::max({worst_sym, max_abs(oe - oe.transpose()), max_abs(op - op.transpose())});
  }
  CHECK(worst_om < 1e-10);
  CHECK(worst_la < 1e-10);
  CHECK(worst_sym == 0.0);
}

TEST_CASE("oracle matrices: trivial structure") {
  SystemParams p;
  p.c1 = p.c2 = 2.0;
  const auto sym = sector(p, HalfInt(0), HalfInt(0));  // m1 = m2
  for (int N = 0; N <= 8; N += 2) {
    const auto oe = omega_matrix_euler(N, sym, MatrixSource::oracle);
    for (int i = 0; i < oe.rows(); ++i) CHECK(std::abs(oe(i, i)) < 1e-12);
    const auto pr = omega_matrix_euler(N, sym, MatrixSource::printed);
    for (int i = 0; i < pr.rows(); ++i) CHECK(pr(i, i) == 0.0);
  }
  for (const auto& [sec, N] : grid(6, 3, {0.0, 2.0})) {
    const auto la = lambda_matrix_polar(N, sec, MatrixSource::oracle);
    if (N == sec.m_plus.twice()) {
      REQUIRE(la.rows() == 1);
      CHECK(la(0, 0) == Approx(lambda_eigenvalue(sec.m_plus, sec)).epsilon(1e-13));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(la);
    const auto states = list_euler_states(N, sec);
    for (std::size_t k = 0; k < states.size(); ++k)
      CHECK(es.eigenvalues()(k) == Approx(lambda_eigenvalue(states[k].j, sec)).epsilon(1e-12));
  }
}

TEST_CASE("literal operator matrices are recorded but differ") {
  SystemParams p;
  p.c1 = 0.5;
  p.c2 = 2.0;
  const auto sec = sector(p, HalfInt(1), HalfInt(0));
  const auto pr = omega_matrix_euler(6, sec, MatrixSource::printed);
  const auto oe = omega_matrix_euler(6, sec, MatrixSource::oracle);
  CHECK(max_abs(pr - oe) > 1e-3);
  const auto lp = lambda_matrix_polar(6, sec, MatrixSource::printed);
  const auto lo = lambda_matrix_polar(6, sec, MatrixSource::oracle);
  CHECK(max_abs(lp - lo) > 1e-3);
  // off-diagonals of the literal Λ agree above the diagonal
  for (int i = 0; i + 1 < lp.rows(); ++i) CHECK(lp(i, i + 1) == Approx(lo(i, i + 1)).epsilon(1e-12));
}

TEST_CASE("Euler and polar builds have the same spectrum") {
  double worst = 0;
  for (const auto& [sec, N] : grid(10, 4))
    for (double R : {0.0, 0.1, 1.0, 10.0}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e(build_q_matrix(N, sec, R, Basis::euler));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> q(build_q_matrix(N, sec, R, Basis::polar));
      worst = std::max(worst, (e.eigenvalues() - q.eigenvalues()).cwiseAbs().maxCoeff());
    }
  CHECK(worst < 1e-10);
  CHECK_THROWS_AS(build_q_matrix(2, sector(SystemParams{}, HalfInt(0), HalfInt(0)), -1.0, Basis::euler), DomainError);
}

TEST_CASE("solutions: zero coupling, orthonormality and the W map") {
  double worst_orth = 0, worst_map = 0, worst_proj = 0;
  for (const auto& [sec, N] : grid(10, 3, {0.0, 0.5, 7.3})) {
    const auto s0 = solve_spheroidal(N, sec, 0.0);
    for (int q = 0; q < s0.size(); ++q) {
      CHECK(s0.q_values[q] == lambda_eigenvalue(s0.euler_states[q].j, sec));
      CHECK(std::abs(s0.U(q, q)) == 1.0);
    }
    for (double R : {0.1, 1.0, 10.0}) {
      const auto s = solve_spheroidal(N, sec, R);
      const int n = s.size();
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      worst_orth = std::max({worst_orth, max_abs(s.U * s.U.transpose() - I), max_abs(s.V * s.V.transpose() - I)});
      const Eigen::MatrixXd W = coefficient_table(N, sec, CoefficientMethod::cg).values;
      worst_map = std::max(worst_map, max_abs(s.V - s.U * W.transpose()));
      const auto sp = solve_spheroidal_polar(N, sec, R);
      worst_proj = std::max(worst_proj, projector_distance(s, sp));
      for (int q = 0; q < n; ++q) {
        CHECK(s.U(q, argmax_abs(s.U.row(q))) > 0);
        if (q > 0) CHECK(s.q_values[q] >= s.q_values[q - 1]);
      }
    }
  }
  CHECK(worst_orth < 1e-10);
  CHECK(worst_map < 1e-10);
  CHECK(worst_proj < 1e-10);

  SystemParams p;
  p.c1 = 0.5;
  const auto sec = sector(p, h(3), h(1));
  const int N = sec.m_plus.twice();
  const auto one = solve_spheroidal(N, sec, 2.5);
  REQUIRE(one.size() == 1);
  const double om = omega_tilde(list_polar_states(N, sec)[0], sec);
  CHECK(one.q_values[0] == Approx(lambda_eigenvalue(sec.m_plus, sec) + 2.5 * om).epsilon(1e-14));
  CHECK(one.U(0, 0) == 1.0);
  const auto r1 = recursion_residual(one, RecursionSource::oracle_consistent);
  CHECK(r1.u_residual[0] == 0.0);
  CHECK(r1.v_residual[0] == 0.0);
}

TEST_CASE("small-coupling scaling of the eigenvalue shifts") {
  const std::vector<double> Rs = {1e-2, 1e-3, 1e-4};
  int linear = 0, quadratic = 0;
  double worst_lin = 0, worst_quad = 0;
  for (const auto& [sec, N] : grid(10, 3)) {
    const auto base = solve_spheroidal(N, sec, 0.0);
    const Eigen::MatrixXd om = omega_matrix_euler(N, sec, MatrixSource::oracle);
    std::vector<std::vector<double>> shifts(base.size());
    for (double R : Rs) {
      const auto s = solve_spheroidal(N, sec, R);
      for (int q = 0; q < s.size(); ++q) shifts[q].push_back(std::abs(s.q_values[q] - base.q_values[q]));
    }
    for (int q = 0; q < base.size(); ++q) {
      // least-squares slope of log|ΔQ| against log R
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      bool usable = true;
      for (std::size_t k = 0; k < Rs.size(); ++k) {
        if (!(shifts[q][k] > 0)) usable = false;
        const double x = std::log(Rs[k]), y = std::log(std::max(shifts[q][k], 1e-300));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
      }
      const double n = static_cast<double>(Rs.size());
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      if (std::abs(om(q, q)) > 1e-9) {
        CHECK(usable);
        worst_lin = std::max(worst_lin, std::abs(slope - 1.0));
        ++linear;
      } else {
        // vanishing first-order shift: second order, and still bounded by C·R
        for (std::size_t k = 0; k < Rs.size(); ++k) CHECK(shifts[q][k] <= 10 * Rs[k]);
        if (usable) {
          worst_quad = std::max(worst_quad, std::abs(slope - 2.0));
          ++quadratic;
        }
      }
    }
  }
  CHECK(linear > 1000);
  CHECK(quadratic > 100);
  CHECK(worst_lin <= 0.05);
  CHECK(worst_quad <= 0.05);
}

TEST_CASE("localization of the extremal rows as the coupling grows") {
  const std::vector<double> Rs = {0.0, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 1000.0};
  for (const auto& [sec, N] : grid(10, 2, {0.0, 2.0})) {
    const auto probe = solve_spheroidal(N, sec, 0.0);
    const int n = probe.size();
    if (n < 3) continue;
    int prev_lo = n, prev_hi = -1;
    for (double R : Rs) {
      const auto s = solve_spheroidal(N, sec, R);
      const int lo = argmax_abs(s.V.row(0)), hi = argmax_abs(s.V.row(n - 1));
      CHECK(lo <= prev_lo);
      CHECK(hi >= prev_hi);
      prev_lo = lo;
      prev_hi = hi;
    }
    CHECK(prev_lo == 0);
    CHECK(prev_hi == n - 1);
  }
}

TEST_CASE("three-term recursions") {
  double worst = 0;
  for (const auto& [sec, N] : grid(10, 3))
    for (double R : {0.0, 0.1, 1.0, 10.0}) {
      const auto s = solve_spheroidal(N, sec, R);
      const auto r = recursion_residual(s, RecursionSource::oracle_consistent);
      worst = std::max({worst, r.max_u(), r.max_v()});
      CHECK(r.undefined_rows == 0);
    }
  CHECK(worst <= 1e-10);

  // literal coefficients: computed, deterministic, not all small
  SystemParams p;
  p.c1 = 0.5;
  p.c2 = 2.0;
  const auto sec = sector(p, HalfInt(0), HalfInt(0));
  const auto s = solve_spheroidal(6, sec, 1.0);
  const auto a = recursion_residual(s, RecursionSource::printed);
  const auto b = recursion_residual(solve_spheroidal(6, sec, 1.0), RecursionSource::printed);
  REQUIRE(a.u_residual.size() == b.u_residual.size());
  for (std::size_t q = 0; q < a.u_residual.size(); ++q) {
    CHECK(std::memcmp(&a.u_residual[q], &b.u_residual[q], sizeof(double)) == 0);
    CHECK(std::memcmp(&a.v_residual[q], &b.v_residual[q], sizeof(double)) == 0);
  }
  CHECK(std::max(a.max_u(), a.max_v()) > 1e-3);
}
