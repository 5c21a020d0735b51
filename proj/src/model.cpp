#include "singosc4/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "singosc4/coords.hpp"
#include "singosc4/errors.hpp"
#include "singosc4/oracle.hpp"
#include "singosc4/specfun.hpp"

namespace singosc4 {

double SystemParams::a() const { return std::sqrt(mu * omega / hbar); }

double SystemParams::coupling(int k) const { return 2.0 * mu * (k == 1 ? c1 : c2) / (hbar * hbar); }

void SystemParams::validate() const {
  if (!(mu > 0) || !(omega > 0) || !(hbar > 0)) throw DomainError("mu, omega, hbar must be positive");
  if (!(c1 >= 0) || !(c2 >= 0)) throw DomainError("c1, c2 must be nonnegative");
  if (!std::isfinite(mu) || !std::isfinite(omega) || !std::isfinite(hbar) || !std::isfinite(c1) ||
      !std::isfinite(c2)) {
    throw DomainError("system parameters must be finite");
  }
}

int SectorParams::n1_max(int N) const {
  const int r = N - std::abs(M1) - std::abs(M2);
  if (N < 0 || r < 0 || r % 2) return -1;
  return r / 2;
}

std::string SectorParams::str() const {
  std::ostringstream os;
  os << "m=" << m.str() << " s=" << s.str() << " (M1=" << M1 << ", M2=" << M2 << ")";
  return os.str();
}

SectorParams sector(const SystemParams& params, HalfInt m, HalfInt s) {
  params.validate();
  const HalfInt sum = m + s, diff = m - s;
  if (!sum.is_integer()) {
    throw InvalidSector("m and s must both be integers or both half-integers (m=" + m.str() +
                        ", s=" + s.str() + ")");
  }
  SectorParams sec;
  sec.m = m;
  sec.s = s;
  sec.M1 = sum.to_int();
  sec.M2 = diff.to_int();
  const double A1 = std::abs(sec.M1), A2 = std::abs(sec.M2);
  // √(M²+g) - |M| written without cancellation
  auto shift = [](double M, double g) { return g == 0.0 ? 0.0 : g / (std::sqrt(M * M + g) + M); };
  sec.delta1 = shift(A1, params.coupling(1));
  sec.delta2 = shift(A2, params.coupling(2));
  sec.m1 = A1 + sec.delta1;
  sec.m2 = A2 + sec.delta2;
  sec.m_plus = HalfInt::from_twice(std::abs(sec.M1) + std::abs(sec.M2));
  sec.m_minus = HalfInt::from_twice(std::abs(sec.M1) - std::abs(sec.M2));
  return sec;
}

int PolarQN::N() const { return 2 * N1 + 2 * N2 + std::abs(M1) + std::abs(M2); }

double energy(const SystemParams& params, int N, const SectorParams& sec) {
  if (N < 0) throw DomainError("N must be nonnegative");
  return params.hbar * params.omega * (N + sec.delta1 + sec.delta2 + 2.0);
}

double lambda_eigenvalue(HalfInt j, const SectorParams& sec) {
  const double x = j.value() + 0.5 * sec.delta();
  return x * (x + 1.0);
}

double omega_tilde(const PolarQN& p, const SectorParams& sec) {
  return 2.0 * (p.N1 - p.N2) + sec.m1 - sec.m2;
}

std::vector<EulerQN> list_euler_states(int N, const SectorParams& sec) {
  std::vector<EulerQN> out;
  const int top = sec.n1_max(N);
  for (int k = 0; k <= top; ++k) out.push_back({N, sec.m_plus + k, sec.m, sec.s});
  return out;
}

std::vector<PolarQN> list_polar_states(int N, const SectorParams& sec) {
  std::vector<PolarQN> out;
  const int top = sec.n1_max(N);
  for (int n1 = 0; n1 <= top; ++n1) out.push_back({n1, top - n1, sec.M1, sec.M2});
  return out;
}

void check_admissible(const EulerQN& q, const SectorParams& sec) {
  if (q.m != sec.m || q.s != sec.s) throw DomainError("Euler state does not belong to sector " + sec.str());
  const HalfInt k = q.j - sec.m_plus;
  const HalfInt r = HalfInt(q.N) - q.j - q.j;
  if (q.N < 0 || !k.is_integer() || k < 0 || !r.is_integer() || r < 0 || r.to_int() % 2) {
    throw DomainError("inadmissible Euler state N=" + std::to_string(q.N) + " j=" + q.j.str() +
                      " in sector " + sec.str());
  }
}

void check_admissible(const PolarQN& p, const SectorParams& sec) {
  if (p.M1 != sec.M1 || p.M2 != sec.M2) throw DomainError("polar state does not belong to sector " + sec.str());
  if (p.N1 < 0 || p.N2 < 0) throw DomainError("N1, N2 must be nonnegative");
}

namespace {

constexpr double kPi = std::numbers::pi;

// Radial order N/2 - j.
int radial_order(int N, HalfInt j) {
  const HalfInt r = HalfInt(N) - j - j;
  if (N < 0 || !r.is_integer() || r < 0 || r.to_int() % 2) {
    throw DomainError("N/2 - j must be a nonnegative integer (N=" + std::to_string(N) + ", j=" + j.str() + ")");
  }
  return r.to_int() / 2;
}

int angular_order(HalfInt j, const SectorParams& sec) {
  const HalfInt k = j - sec.m_plus;
  if (!k.is_integer() || k < 0) throw DomainError("j - m+ must be a nonnegative integer (j=" + j.str() + ")");
  return k.to_int();
}

// x^p with the exact limit 0^0 = 1.
double power(double x, double p) { return p == 0.0 ? 1.0 : (x == 0.0 ? 0.0 : std::pow(x, p)); }

}  // namespace

double angular_profile(double beta, HalfInt j, const SectorParams& sec) {
  if (!(beta >= 0.0 && beta <= kPi)) throw DomainError("beta must lie in [0, pi]");
  const int n = angular_order(j, sec);
  double c, s, t;
  if (beta == 0.0) {
    c = 1.0, s = 0.0, t = 1.0;
  } else if (beta == kPi) {
    c = 0.0, s = 1.0, t = -1.0;
  } else {
    c = std::cos(0.5 * beta), s = std::sin(0.5 * beta), t = std::cos(beta);
  }
  return power(c, sec.m1) * power(s, sec.m2) * jacobi_p(n, sec.m2, sec.m1, t);
}

double radial_profile(double u, int N, HalfInt j, const SectorParams& sec, const SystemParams& params) {
  if (!(u >= 0.0)) throw DomainError("u must be nonnegative");
  const int nr = radial_order(N, j);
  const double L = 2.0 * j.value() + sec.delta();
  const double au = params.a() * u, x = au * au;
  return power(au, L) * std::exp(-0.5 * x) * hyp1f1_terminating(nr, L + 2.0, x);
}

double polar_profile(double rho, int Na, int Ma, double delta_a, const SystemParams& params) {
  if (!(rho >= 0.0)) throw DomainError("rho must be nonnegative");
  if (Na < 0) throw DomainError("Na must be nonnegative");
  const double m = std::abs(Ma) + delta_a;
  const double ar = params.a() * rho, x = ar * ar;
  return power(ar, m) * std::exp(-0.5 * x) * hyp1f1_terminating(Na, m + 1.0, x);
}

std::complex<double> angular_Z(double beta, double alpha, double gamma, const EulerQN& q,
                               const SectorParams& sec) {
  check_admissible(q, sec);
  const double c = sec.phase() * normalize_numeric(AngularNorm{q.j}, sec, SystemParams{});
  const double ph = q.m.value() * alpha + q.s.value() * gamma;
  return c * angular_profile(beta, q.j, sec) * std::polar(1.0, ph);
}

double radial_R(double u, int N, HalfInt j, const SectorParams& sec, const SystemParams& params) {
  radial_order(N, j);
  angular_order(j, sec);
  return normalize_numeric(RadialNorm{N, j}, sec, params) * radial_profile(u, N, j, sec, params);
}

double phi_polar(double rho, int Na, int Ma, double delta_a, const SystemParams& params) {
  return normalize_numeric(PolarNorm{Na, Ma, delta_a}, SectorParams{}, params) *
         polar_profile(rho, Na, Ma, delta_a, params);
}

std::complex<double> psi_euler(const EulerCoords& point, const EulerQN& q, const SectorParams& sec,
                               const SystemParams& params) {
  validate(point);
  return radial_R(point.u, q.N, q.j, sec, params) * angular_Z(point.beta, point.alpha, point.gamma, q, sec);
}

std::complex<double> psi_polar(const DoublePolarCoords& point, const PolarQN& p, const SectorParams& sec,
                               const SystemParams& params) {
  validate(point);
  check_admissible(p, sec);
  const double f = phi_polar(point.rho1, p.N1, p.M1, sec.delta1, params) *
                   phi_polar(point.rho2, p.N2, p.M2, sec.delta2, params) / (2.0 * kPi);
  return f * std::polar(1.0, p.M1 * point.phi1 + p.M2 * point.phi2);
}

double printed_angular_norm(HalfInt j, const SectorParams& sec) {
  const int n = angular_order(j, sec);
  const double d = sec.delta(), jj = j.value(), mp = sec.m_plus.value(), mm = sec.m_minus.value();
  const double lg = std::lgamma(n + 1.0) + ln_gamma(jj + mp + d + 1.0) - ln_gamma(jj + mm + sec.delta1 + 1.0) -
                    ln_gamma(jj - mm + sec.delta2 + 1.0);
  return sec.phase() * std::sqrt((2.0 * jj + d + 2.0) / (16.0 * kPi * kPi) * std::exp(lg));
}

double printed_radial_norm(int N, HalfInt j, const SectorParams& sec, const SystemParams& params) {
  const int nr = radial_order(N, j);
  const double L = 2.0 * j.value() + sec.delta();
  const double a = params.a();
  return 4.0 * a * a * std::exp(0.5 * (ln_gamma(0.5 * N + j.value() + sec.delta() + 2.0) - std::lgamma(nr + 1.0)) -
                                ln_gamma(L + 2.0));
}

double printed_polar_norm(int Na, int Ma, double delta_a, const SystemParams& params) {
  if (Na < 0) throw DomainError("Na must be nonnegative");
  const double m = std::abs(Ma) + delta_a;
  return params.a() * std::sqrt(2.0 * std::exp(ln_gamma(Na + m + 1.0) - std::lgamma(Na + 1.0))) /
         std::exp(ln_gamma(m + 1.0));
}

}  // namespace singosc4
