#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "singosc4/coords.hpp"
#include "singosc4/errors.hpp"
#include "singosc4/interbasis.hpp"
#include "singosc4/model.hpp"

using namespace singosc4;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

struct Case {
  SectorParams sec;
  int N;
  SystemParams params;
};

// Every populated (N, sector) with N ≤ nmax, |m|,|s| ≤ smax/2, c1, c2 from the grid.
std::vector<Case> grid(int nmax, int smax_twice) {
  std::vector<Case> out;
  for (double c1 : {0.0, 0.5, 2.0, 7.3})
    for (double c2 : {0.0, 0.5, 2.0, 7.3})
      for (int tm = -smax_twice; tm <= smax_twice; ++tm)
        for (int ts = -smax_twice; ts <= smax_twice; ++ts) {
          if ((tm + ts) % 2) continue;
          SystemParams p;
          p.c1 = c1;
          p.c2 = c2;
          const auto sec = sector(p, h(tm), h(ts));
          for (int N = 0; N <= nmax; ++N)
            if (sec.n1_max(N) >= 0) out.push_back({sec, N, p});
        }
  return out;
}

long double lfl(long double x) { return std::lgamma(x + 1.0L); }

// su(2) Clebsch-Gordan coefficient from the Racah sum, standard arguments only.
double racah_cg(double a, double al, double b, double be, double c, double ga) {
  if (std::abs(al + be - ga) > 1e-12) return 0.0;
  const long double pre = 0.5L * (std::log(2.0L * c + 1) + lfl(c + a - b) + lfl(c - a + b) + lfl(a + b - c) -
                                  lfl(a + b + c + 1) + lfl(c + ga) + lfl(c - ga) + lfl(a - al) + lfl(a + al) +
                                  lfl(b - be) + lfl(b + be));
  long double s = 0;
  for (int k = 0; k <= 40; ++k) {
    const long double d[] = {static_cast<long double>(k), a + b - c - k, a - al - k, b + be - k, c - b + al + k,
                             c - a - be + k};
    long double l = 0;
    bool ok = true;
    for (long double x : d) {
      if (x < -0.5L) ok = false;
      else l += lfl(std::round(x));
    }
    if (ok) s += (k % 2 ? -1.0L : 1.0L) * std::exp(pre - l);
  }
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("method names") {
  CHECK(to_string(CoefficientMethod::three_f2) == "3f2");
  CHECK(to_string(CoefficientMethod::cg) == "cg");
  CHECK(to_string(CoefficientMethod::quadrature) == "quad");
  CHECK(parse_coefficient_method("quad") == CoefficientMethod::quadrature);
  CHECK(parse_coefficient_method("3f2") == CoefficientMethod::three_f2);
  CHECK_THROWS_AS(parse_coefficient_method("CG"), DomainError);
}

TEST_CASE("single-state multiplets give unit coefficients") {
  for (const auto& [sec, N, params] : grid(4, 3)) {
    if (sec.n1_max(N) != 0) continue;
    const auto p = list_polar_states(N, sec)[0];
    const auto e = list_euler_states(N, sec)[0];
    CHECK(std::abs(w_coeff_3f2(p, e, sec)) == Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(w_coeff_cg(p, e, sec)) == Approx(1.0).epsilon(1e-13));
    CHECK(w_coeff_cg(p, e, sec) * w_inverse(e, p, sec) == Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("3F2 and Clebsch-Gordan forms agree elementwise, with sign") {
  double worst = 0;
  int tables = 0;
  for (const auto& [sec, N, params] : grid(8, 3)) {
    const auto a = coefficient_table(N, sec, CoefficientMethod::three_f2);
    const auto b = coefficient_table(N, sec, CoefficientMethod::cg);
    worst = std::max(worst, (a.values - b.values).cwiseAbs().maxCoeff());
    ++tables;
  }
  CHECK(tables > 500);
  CHECK(worst < 1e-10);
}

TEST_CASE("closed-form tables are orthogonal and the inverse is the transpose") {
  double worst_orth = 0, worst_inv = 0, worst_id = 0;
  for (const auto& [sec, N, params] : grid(12, 4)) {
    const auto t = coefficient_table(N, sec, CoefficientMethod::cg);
    const int n = t.size();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    worst_orth = std::max(worst_orth, (t.values * t.values.transpose() - I).cwiseAbs().maxCoeff());
    worst_orth = std::max(worst_orth, (t.values.transpose() * t.values - I).cwiseAbs().maxCoeff());
    const auto f = coefficient_table(N, sec, CoefficientMethod::three_f2);
    worst_orth = std::max(worst_orth, (f.values * f.values.transpose() - I).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd inv = inverse_table(N, sec);
    worst_inv = std::max(worst_inv, (inv - t.values.transpose()).cwiseAbs().maxCoeff());
    worst_id = std::max(worst_id, (inv * t.values - I).cwiseAbs().maxCoeff());
  }
  CHECK(worst_orth < 1e-10);
  CHECK(worst_inv < 1e-10);
  CHECK(worst_id < 1e-10);
}

TEST_CASE("regular sectors reproduce standard su(2) coefficients") {
  double worst = 0;
  for (const auto& [sec, N, params] : grid(10, 4)) {
    if (sec.delta() != 0.0) continue;
    for (const auto& p : list_polar_states(N, sec))
      for (const auto& e : list_euler_states(N, sec)) {
        const double mm = sec.m_minus.value();
        const double a = (N - 2 * mm) / 4.0, b = (N + 2 * mm) / 4.0;
        const double al = (sec.m2 + p.N2 - p.N1) / 2, be = (sec.m1 + p.N1 - p.N2) / 2;
        const double ref = (p.N1 % 2 ? -1 : 1) * sec.phase() *
                           racah_cg(a, al, b, be, e.j.value(), (sec.m1 + sec.m2) / 2);
        worst = std::max(worst, std::abs(w_coeff_cg(p, e, sec) - ref));
      }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("mismatched states are rejected") {
  const auto sec = sector(SystemParams{}, HalfInt(1), HalfInt(0));
  const PolarQN p{0, 1, 1, 1};
  CHECK_THROWS_AS(w_coeff_cg(p, EulerQN{6, HalfInt(1), HalfInt(1), HalfInt(0)}, sec), DomainError);
  CHECK_THROWS_AS(w_coeff_3f2(p, EulerQN{4, HalfInt(1), HalfInt(0), HalfInt(0)}, sec), DomainError);
  CHECK_THROWS_AS(w_inverse(EulerQN{4, HalfInt(1), HalfInt(1), HalfInt(0)}, PolarQN{0, 1, 2, 0}, sec), DomainError);
  CHECK(coefficient_table(3, sec, CoefficientMethod::cg).size() == 0);
}

TEST_CASE("literal readings of the closed forms disagree with the verified ones") {
  // With δ = 0 the literal CG parameters leave a - α half-odd, so the sum does not terminate.
  const auto s00 = sector(SystemParams{}, HalfInt(0), HalfInt(0));
  const auto p = list_polar_states(2, s00);
  const auto e = list_euler_states(2, s00);
  CHECK_THROWS_AS(w_coeff_cg_printed(p[0], e[0], s00), DomainError);

  // The literal ₃F₂ form hits its lower-parameter pole inside the sum at N1 = j - m+ = 2 ...
  SystemParams q;
  q.c1 = 0.5;
  q.c2 = 2.0;
  const auto sec = sector(q, HalfInt(0), HalfInt(0));
  const auto rows = list_polar_states(4, sec);
  const auto cols = list_euler_states(4, sec);
  CHECK_THROWS_AS(w_coeff_3f2_printed(rows[2], cols[2], sec), DomainError);
  // ... and is off by more than a phase where it is finite.
  const auto p0 = list_polar_states(0, sec)[0];
  const auto e0 = list_euler_states(0, sec)[0];
  CHECK(std::abs(std::abs(w_coeff_3f2_printed(p0, e0, sec)) - 1.0) > 1e-3);
  CHECK(std::abs(w_coeff_3f2(p0, e0, sec)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pointwise expansion of polar states in Euler states and back") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_fwd = 0, worst_inv = 0;
  int points = 0;
  for (const auto& [sec, N, params] : grid(4, 4)) {
    const SystemParams& p = params;
    const auto W = coefficient_table(N, sec, CoefficientMethod::cg);
    const Eigen::MatrixXd Wt = inverse_table(N, sec);
    const int n = W.size();
    for (int trial = 0; trial < 50; ++trial) {
      const EulerCoords e{0.1 + 2.9 * U(rng), 2 * kPi * U(rng), kPi * U(rng), 4 * kPi * U(rng)};
      const DoublePolarCoords d = dp_from_euler(e);
      std::vector<std::complex<double>> pe(n), pp(n);
      double scale = 0;
      for (int i = 0; i < n; ++i) {
        pe[i] = psi_euler(e, W.cols[i], sec, p);
        pp[i] = psi_polar(d, W.rows[i], sec, p);
        scale = std::max({scale, std::abs(pe[i]), std::abs(pp[i])});
      }
      if (scale == 0) continue;
      for (int r = 0; r < n; ++r) {
        std::complex<double> s = 0;
        for (int c = 0; c < n; ++c) s += W.values(r, c) * pe[c];
        worst_fwd = std::max(worst_fwd, std::abs(pp[r] - s) / scale);
      }
      for (int c = 0; c < n; ++c) {
        std::complex<double> s = 0;
        for (int r = 0; r < n; ++r) s += Wt(c, r) * pp[r];
        worst_inv = std::max(worst_inv, std::abs(pe[c] - s) / scale);
      }
      ++points;
    }
  }
  CHECK(points > 10000);
  CHECK(worst_fwd < 1e-8);
  CHECK(worst_inv < 1e-8);
}
