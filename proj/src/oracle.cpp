#include "singosc4/oracle.hpp"

#include <cmath>
#include <numbers>

#include "singosc4/errors.hpp"
#include "singosc4/io.hpp"
#include "singosc4/specfun.hpp"

namespace singosc4 {

namespace {

constexpr double kPi = std::numbers::pi;

double norm_integral(const NormKind& kind, const SectorParams& sec, const SystemParams& params, int n) {
  const double a = params.a();
  if (const auto* r = std::get_if<RadialNorm>(&kind)) {
    const double L = 2.0 * r->j.value() + sec.delta();
    const int nr = (r->N - static_cast<int>(std::lround(2.0 * r->j.value()))) / 2;
    const auto rule = cached_rule(QuadratureSpec::laguerre(L + 1.0), n);
    const double s = rule->integrate([&](double x) {
      const double f = hyp1f1_terminating(nr, L + 2.0, x);
      return f * f;
    });
    return s / (2.0 * a * a * a * a);
  }
  if (const auto* p = std::get_if<PolarNorm>(&kind)) {
    const double m = std::abs(p->Ma) + p->delta_a;
    const auto rule = cached_rule(QuadratureSpec::laguerre(m), n);
    const double s = rule->integrate([&](double x) {
      const double f = hyp1f1_terminating(p->Na, m + 1.0, x);
      return f * f;
    });
    return s / (2.0 * a * a);
  }
  const auto& g = std::get<AngularNorm>(kind);
  const int k = (g.j - sec.m_plus).to_int();
  const auto rule = cached_rule(QuadratureSpec::jacobi(sec.m2, sec.m1), n);
  const double s = rule->integrate([&](double t) {
    const double f = jacobi_p(k, sec.m2, sec.m1, t);
    return f * f;
  });
  // (1/8)·2π·4π·∫ sinβ dβ, with the half-angle powers pulled into the weight
  return kPi * kPi * std::exp2(-(sec.m1 + sec.m2)) * s;
}

void check_norm_kind(const NormKind& kind, const SectorParams& sec) {
  if (const auto* r = std::get_if<RadialNorm>(&kind)) {
    const HalfInt rest = HalfInt(r->N) - r->j - r->j;
    if (r->N < 0 || !rest.is_integer() || rest < 0 || rest.to_int() % 2 || r->j < 0) {
      throw DomainError("radial normalization needs N/2 - j a nonnegative integer");
    }
  } else if (const auto* p = std::get_if<PolarNorm>(&kind)) {
    if (p->Na < 0 || p->delta_a < 0) throw DomainError("polar normalization needs Na >= 0, delta >= 0");
  } else {
    const HalfInt k = std::get<AngularNorm>(kind).j - sec.m_plus;
    if (!k.is_integer() || k < 0) throw DomainError("angular normalization needs j - m+ a nonnegative integer");
  }
}

}  // namespace

double normalize_numeric(const NormKind& kind, const SectorParams& sec, const SystemParams& params,
                         const ConvergenceProtocol& protocol) {
  check_norm_kind(kind, sec);
  const auto cv = converge_nodes([&](int n) { return norm_integral(kind, sec, params, n); },
                                 "normalization integral", protocol);
  if (!(cv.value > 0.0)) throw ConvergenceError("normalization integral is not positive", "");
  return 1.0 / std::sqrt(cv.value);
}

namespace {

// All pieces of the overlap integrand for one (N, sector), evaluated on a
// tensor rule. The Laguerre exponent is fixed at the lowest j so one rule
// serves the whole table; higher j carry x^{j - m+} explicitly.
class OverlapKernel {
 public:
  OverlapKernel(int N, const SectorParams& sec, const SystemParams& params)
      : N_(N), sec_(sec), rows_(list_polar_states(N, sec)), cols_(list_euler_states(N, sec)) {
    const int n = static_cast<int>(rows_.size());
    const double a = params.a();
    pref_.resize(n, n);
    for (int r = 0; r < n; ++r) {
      const double k1 = normalize_numeric(PolarNorm{rows_[r].N1, sec.M1, sec.delta1}, sec, params);
      const double k2 = normalize_numeric(PolarNorm{rows_[r].N2, sec.M2, sec.delta2}, sec, params);
      for (int c = 0; c < n; ++c) {
        const double cr = normalize_numeric(RadialNorm{N, cols_[c].j}, sec, params);
        const double cz = normalize_numeric(AngularNorm{cols_[c].j}, sec, params);
        pref_(r, c) = sec.phase() * kPi / (4.0 * a * a * a * a) * k1 * k2 * cr * cz *
                      std::exp2(-(sec.m1 + sec.m2));
      }
    }
  }

  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<PolarQN>& rows() const { return rows_; }
  const std::vector<EulerQN>& cols() const { return cols_; }

  Eigen::MatrixXd integrate(int nodes) const {
    const int n = size();
    const double d = sec_.delta(), mp = sec_.m_plus.value();
    const auto lag = cached_rule(QuadratureSpec::laguerre(2.0 * mp + d + 1.0), nodes);
    const auto jac = cached_rule(QuadratureSpec::jacobi(sec_.m2, sec_.m1), nodes);

    // radial and angular factors depend on one variable each
    Eigen::MatrixXd rad(nodes, n), ang(nodes, n);
    for (int i = 0; i < nodes; ++i) {
      const double x = lag->nodes[i], t = jac->nodes[i];
      for (int c = 0; c < n; ++c) {
        const double j = cols_[c].j.value();
        const int k = (cols_[c].j - sec_.m_plus).to_int();
        const int nr = (N_ - static_cast<int>(std::lround(2.0 * j))) / 2;
        rad(i, c) = lag->weights[i] * std::pow(x, k) * hyp1f1_terminating(nr, 2.0 * j + d + 2.0, x);
        ang(i, c) = jac->weights[i] * jacobi_p(k, sec_.m2, sec_.m1, t);
      }
    }

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd f1f2(nodes, n);  // over t for fixed x, per row
    for (int i = 0; i < nodes; ++i) {
      const double x = lag->nodes[i];
      for (int r = 0; r < n; ++r) {
        for (int l = 0; l < nodes; ++l) {
          const double t = jac->nodes[l];
          f1f2(l, r) = hyp1f1_terminating(rows_[r].N1, sec_.m1 + 1.0, 0.5 * x * (1.0 + t)) *
                       hyp1f1_terminating(rows_[r].N2, sec_.m2 + 1.0, 0.5 * x * (1.0 - t));
        }
      }
      // out(r, c) += Σ_l f1f2(l, r) ang(l, c) · rad(i, c)
      out.noalias() += (f1f2.transpose() * ang) * rad.row(i).asDiagonal();
    }
    return out.cwiseProduct(pref_);
  }

 private:
  int N_;
  SectorParams sec_;
  std::vector<PolarQN> rows_;
  std::vector<EulerQN> cols_;
  Eigen::MatrixXd pref_;
};

}  // namespace

QuadratureTable quadrature_table(int N, const SectorParams& sec, const SystemParams& params,
                                 const ConvergenceProtocol& protocol) {
  const OverlapKernel kernel(N, sec, params);
  QuadratureTable out;
  out.table.N = N;
  out.table.sector = sec;
  out.table.rows = kernel.rows();
  out.table.cols = kernel.cols();
  const int n = kernel.size();
  if (n == 0) {
    out.table.values.resize(0, 0);
    return out;
  }

  int nodes = protocol.start_nodes;
  Eigen::MatrixXd prev = kernel.integrate(nodes);
  std::string log = "nodes=" + std::to_string(nodes) + "\n";
  while (nodes < protocol.max_nodes) {
    nodes *= 2;
    Eigen::MatrixXd cur = kernel.integrate(nodes);
    const double delta = (cur - prev).cwiseAbs().maxCoeff();
    log += "nodes=" + std::to_string(nodes) + " max_delta=" + format_double(delta) + "\n";
    if (delta < protocol.tol * std::max(1.0, cur.cwiseAbs().maxCoeff())) {
      out.table.values = std::move(cur);
      out.max_delta = delta;
      out.nodes = nodes;
      return out;
    }
    prev = std::move(cur);
  }
  throw ConvergenceError("overlap table did not converge for N=" + std::to_string(N) + " " + sec.str(), log);
}

OverlapResult overlap_polar_euler(const PolarQN& polar, const EulerQN& euler, const SectorParams& sec,
                                  const SystemParams& params, const ConvergenceProtocol& protocol) {
  if (polar.M1 != sec.M1 || polar.M2 != sec.M2 || euler.m != sec.m || euler.s != sec.s) return {0.0, 0.0, 0};
  check_admissible(polar, sec);
  check_admissible(euler, sec);

  const double a = params.a();
  const double d = sec.delta(), mp = sec.m_plus.value(), j = euler.j.value();
  const int k = (euler.j - sec.m_plus).to_int();
  const int nr = (euler.N - static_cast<int>(std::lround(2.0 * j))) / 2;
  const double pref =
      sec.phase() * kPi / (4.0 * a * a * a * a) * std::exp2(-(sec.m1 + sec.m2)) *
      normalize_numeric(PolarNorm{polar.N1, sec.M1, sec.delta1}, sec, params, protocol) *
      normalize_numeric(PolarNorm{polar.N2, sec.M2, sec.delta2}, sec, params, protocol) *
      normalize_numeric(RadialNorm{euler.N, euler.j}, sec, params, protocol) *
      normalize_numeric(AngularNorm{euler.j}, sec, params, protocol);

  auto integral = [&](int n) {
    const auto lag = cached_rule(QuadratureSpec::laguerre(j + mp + d + 1.0), n);
    const auto jac = cached_rule(QuadratureSpec::jacobi(sec.m2, sec.m1), n);
    std::vector<double> pt(n);
    for (int l = 0; l < n; ++l) pt[l] = jac->weights[l] * jacobi_p(k, sec.m2, sec.m1, jac->nodes[l]);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = lag->nodes[i];
      double inner = 0.0;
      for (int l = 0; l < n; ++l) {
        const double t = jac->nodes[l];
        inner += pt[l] * hyp1f1_terminating(polar.N1, sec.m1 + 1.0, 0.5 * x * (1.0 + t)) *
                 hyp1f1_terminating(polar.N2, sec.m2 + 1.0, 0.5 * x * (1.0 - t));
      }
      s += lag->weights[i] * hyp1f1_terminating(nr, 2.0 * j + d + 2.0, x) * inner;
    }
    return pref * s;
  };
  const auto cv = converge_nodes(integral, "polar/Euler overlap", protocol);
  return {cv.value, cv.delta, cv.nodes};
}

int align_columns(Eigen::MatrixXd& table, const Eigen::MatrixXd& reference) {
  if (table.rows() != reference.rows() || table.cols() != reference.cols()) {
    throw DomainError("align_columns: shape mismatch");
  }
  int flips = 0;
  for (Eigen::Index c = 0; c < table.cols(); ++c) {
    if (table.col(c).dot(reference.col(c)) < 0.0) {
      table.col(c) *= -1.0;
      ++flips;
    }
  }
  return flips;
}

Eigen::MatrixXd matrix_element_numeric(Operator op, Basis basis, int N, const SectorParams& sec,
                                       const SystemParams& params) {
  const auto rows = list_polar_states(N, sec);
  const auto cols = list_euler_states(N, sec);
  const int n = static_cast<int>(rows.size());
  Eigen::VectorXd lam(n), om(n);
  for (int i = 0; i < n; ++i) {
    lam(i) = lambda_eigenvalue(cols[i].j, sec);
    om(i) = omega_tilde(rows[i], sec);
  }
  if (op == Operator::lambda && basis == Basis::euler) return lam.asDiagonal();
  if (op == Operator::omega && basis == Basis::polar) return om.asDiagonal();
  const Eigen::MatrixXd W = quadrature_table(N, sec, params).table.values;
  if (op == Operator::lambda) return W * lam.asDiagonal() * W.transpose();
  return W.transpose() * om.asDiagonal() * W;
}

}  // namespace singosc4
