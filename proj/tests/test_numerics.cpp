#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "singosc4/errors.hpp"
#include "singosc4/quadrature.hpp"
#include "singosc4/symtri.hpp"

using namespace singosc4;
using doctest::Approx;

namespace {

// ∫(1-t)^a(1+t)^b t^k dt from integration by parts:
// (a+b+k+2) μ_{k+1} = (b-a) μ_k + k μ_{k-1}
std::vector<long double> jacobi_moments(double a, double b, int kmax) {
  std::vector<long double> mu(kmax + 1);
  mu[0] = std::exp(static_cast<long double>(a + b + 1) * std::log(2.0L) + std::lgamma(a + 1.0L) +
                   std::lgamma(b + 1.0L) - std::lgamma(a + b + 2.0L));
  if (kmax >= 1) mu[1] = (b - a) * mu[0] / (a + b + 2);
  for (int k = 1; k < kmax; ++k) mu[k + 1] = ((b - a) * mu[k] + k * mu[k - 1]) / (a + b + k + 2);
  return mu;
}

SymTriMatrix random_symtri(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  SymTriMatrix t;
  for (int i = 0; i < n; ++i) t.diag.push_back(u(rng));
  for (int i = 0; i + 1 < n; ++i) t.offdiag.push_back(u(rng));
  return t;
}

}  // namespace

TEST_CASE("classical rules") {
  const auto g2 = golub_welsch(QuadratureSpec::legendre(), 2);
  CHECK(g2.nodes[0] == Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g2.nodes[1] == Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g2.weights[0] == Approx(1.0).epsilon(1e-15));
  CHECK(g2.weights[1] == Approx(1.0).epsilon(1e-15));

  const auto l1 = golub_welsch(QuadratureSpec::laguerre(0.0), 1);
  CHECK(l1.nodes[0] == Approx(1.0).epsilon(1e-15));
  CHECK(l1.weights[0] == Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(golub_welsch(QuadratureSpec::legendre(), 0), DomainError);
  CHECK_THROWS_AS(golub_welsch(QuadratureSpec::laguerre(-1.0), 4), DomainError);
  CHECK_THROWS_AS(golub_welsch(QuadratureSpec::jacobi(0.5, -1.2), 4), DomainError);
}

TEST_CASE("jacobi moment recurrence against frozen high-precision values") {
  struct Row {
    double a, b;
    int k;
    double value;
  };
  for (const Row& r : {Row{1.5, 0.25, 7, -0.16174876049542926165}, Row{0.5, 2.3, 12, 0.080893993274490850192},
                       Row{3.7, 1.2, 25, -0.0090913048016852248055}, Row{0, 0, 10, 0.18181818181818181818}}) {
    const auto mu = jacobi_moments(r.a, r.b, r.k);
    CHECK(static_cast<double>(mu[r.k]) == Approx(r.value).epsilon(1e-14));
  }
}

TEST_CASE("rules are positive, interior and exact on random monomials") {
  std::mt19937_64 rng(1234);
  const std::vector<QuadratureSpec> specs = {QuadratureSpec::legendre(),       QuadratureSpec::laguerre(0.0),
                                             QuadratureSpec::laguerre(2.75),   QuadratureSpec::laguerre(7.3),
                                             QuadratureSpec::jacobi(0.0, 0.0), QuadratureSpec::jacobi(1.5, 0.25),
                                             QuadratureSpec::jacobi(3.7, 1.2), QuadratureSpec::jacobi(-0.5, 6.0)};
  for (const auto& spec : specs)
    for (int n : {1, 3, 8, 20, 32}) {
      CAPTURE(spec.str());
      CAPTURE(n);
      const auto rule = golub_welsch(spec, n);
      REQUIRE(rule.order() == n);
      for (int i = 0; i < n; ++i) {
        CHECK(rule.weights[i] > 0);
        if (spec.kind == QuadratureKind::laguerre) {
          CHECK(rule.nodes[i] > 0);
        } else {
          CHECK(std::abs(rule.nodes[i]) < 1);
        }
        if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      }
      const double a = spec.kind == QuadratureKind::legendre ? 0.0 : spec.alpha;
      const double b = spec.kind == QuadratureKind::legendre ? 0.0 : spec.beta;
      const auto mu = jacobi_moments(a, b, 2 * n);
      std::uniform_int_distribution<int> deg(0, 2 * n - 1);
      double worst = 0;
      for (int trial = 0; trial < 20; ++trial) {
        const int k = deg(rng);
        const double q = rule.integrate([k](double t) { return std::pow(t, k); });
        double exact, scale;
        if (spec.kind == QuadratureKind::laguerre) {
          exact = std::exp(std::lgamma(spec.alpha + k + 1.0));
          scale = exact;
        } else {
          exact = static_cast<double>(mu[k]);
          scale = rule.integrate([k](double t) { return std::pow(std::abs(t), k); });
        }
        worst = std::max(worst, std::abs(q - exact) / scale);
      }
      CHECK(worst < 1e-12);
    }
}

TEST_CASE("cached rules are shared and safe under concurrent lookup") {
  const auto spec = QuadratureSpec::jacobi(0.37, 1.91);
  std::vector<std::shared_ptr<const QuadratureRule>> got(8);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&, i] {
      for (int rep = 0; rep < 50; ++rep) got[i] = cached_rule(spec, 64 + (rep % 3));
      got[i] = cached_rule(spec, 64);
    });
  for (auto& t : threads) t.join();
  for (const auto& p : got) CHECK(p.get() == got[0].get());
  const auto fresh = golub_welsch(spec, 64);
  CHECK(got[0]->nodes == fresh.nodes);
  CHECK(got[0]->weights == fresh.weights);
}

TEST_CASE("convergence protocol") {
  const auto ok = converge_nodes([](int n) { return 1.0 + std::exp(-0.25 * n); }, "fast");
  CHECK(ok.value == Approx(1.0).epsilon(1e-10));
  CHECK(ok.nodes <= 1024);
  CHECK_THROWS_AS(converge_nodes([](int n) { return 1.0 / std::sqrt(double(n)) * 1e3; }, "slow"), ConvergenceError);
  try {
    converge_nodes([](int n) { return double(n); }, "diverging");
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.diagnostics().find("n=1024") != std::string::npos);
  }
}

TEST_CASE("symtri_eigen small examples") {
  SymTriMatrix t{{0.0, 0.0}, {1.0}};
  auto e = symtri_eigen(t);
  CHECK(e.values[0] == Approx(-1.0).epsilon(1e-15));
  CHECK(e.values[1] == Approx(1.0).epsilon(1e-15));

  SymTriMatrix d{{3.0, -1.0, 2.0}, {0.0, 0.0}};
  e = symtri_eigen(d);
  CHECK(e.values == std::vector<double>{-1.0, 2.0, 3.0});
  CHECK(std::abs(e.vectors(1, 0)) == 1.0);
  CHECK(std::abs(e.vectors(2, 1)) == 1.0);
  CHECK(std::abs(e.vectors(0, 2)) == 1.0);

  SymTriMatrix one{{4.5}, {}};
  e = symtri_eigen(one);
  CHECK(e.values[0] == 4.5);
  CHECK(std::abs(e.vectors(0, 0)) == 1.0);
}

TEST_CASE("symtri_eigen residual and orthonormality on random matrices") {
  std::mt19937_64 rng(99);
  double worst_res = 0, worst_orth = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 17 + (trial == 39 ? 60 : 0);
    const SymTriMatrix t = random_symtri(rng, n);
    const auto e = symtri_eigen(t);
    const Eigen::MatrixXd T = t.dense();
    const double norm = T.operatorNorm();
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXd v = e.vectors.col(k);
      worst_res = std::max(worst_res, (T * v - e.values[k] * v).norm() / norm);
    }
    worst_orth = std::max(
        worst_orth, (e.vectors.transpose() * e.vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    const auto vals_only = symtri_eigen(t, EigenvectorMode::none);
    for (int k = 0; k < n; ++k) CHECK(vals_only.values[k] == Approx(e.values[k]).epsilon(1e-13).scale(norm));
  }
  CHECK(worst_res <= 1e-12);
  CHECK(worst_orth <= 1e-12);
}

TEST_CASE("Sturm counts agree with the QL eigenvalues on 20 random matrices") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial;
    const SymTriMatrix t = random_symtri(rng, n);
    const auto e = symtri_eigen(t, EigenvectorMode::none);
    const double scale = t.norm_inf();
    for (int k = 0; k < n; ++k) {
      CHECK(bisect_eigenvalue(t, k) == Approx(e.values[k]).epsilon(1e-13).scale(scale));
      if (k + 1 < n && e.values[k + 1] - e.values[k] > 1e-9 * scale) {
        const double mid = 0.5 * (e.values[k] + e.values[k + 1]);
        CHECK(sturm_count(t, mid) == k + 1);
      }
    }
    CHECK(sturm_count(t, e.values.front() - 1.0) == 0);
    CHECK(sturm_count(t, e.values.back() + 1.0) == n);
  }
}
