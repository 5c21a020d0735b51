#include "singosc4/coords.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "singosc4/errors.hpp"

namespace singosc4 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool in(double x, double lo, double hi) { return x >= lo && x < hi; }

// Reduces x into [0, period).
double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  return r >= period ? 0.0 : r;
}

}  // namespace

void validate(const EulerCoords& e) {
  if (!(e.u >= 0) || !in(e.alpha, 0, kTwoPi) || !(e.beta >= 0 && e.beta <= kPi) || !in(e.gamma, 0, 2 * kTwoPi)) {
    throw DomainError("Euler coordinates out of range (u >= 0, alpha in [0,2pi), beta in [0,pi], gamma in [0,4pi))");
  }
}

void validate(const DoublePolarCoords& p) {
  if (!(p.rho1 >= 0) || !(p.rho2 >= 0) || !in(p.phi1, 0, kTwoPi) || !in(p.phi2, 0, kTwoPi)) {
    throw DomainError("double polar coordinates out of range (rho >= 0, phi in [0,2pi))");
  }
}

void validate(const SpheroidalCoords& s) {
  if (!(s.xi >= 1) || !(s.eta >= -1 && s.eta <= 1) || !in(s.alpha, 0, kTwoPi) || !in(s.gamma, 0, 2 * kTwoPi) ||
      !(s.d > 0)) {
    throw DomainError("spheroidal coordinates out of range (xi >= 1, eta in [-1,1], d > 0)");
  }
}

Point4 euler_to_cartesian(const EulerCoords& e) {
  validate(e);
  const double r1 = e.u * std::cos(0.5 * e.beta), r2 = e.beta == kPi ? e.u : e.u * std::sin(0.5 * e.beta);
  const double p1 = 0.5 * (e.alpha + e.gamma), p2 = 0.5 * (e.alpha - e.gamma);
  return {r1 * std::cos(p1), r1 * std::sin(p1), r2 * std::cos(p2), r2 * std::sin(p2)};
}

Point4 dp_to_cartesian(const DoublePolarCoords& p) {
  validate(p);
  return {p.rho1 * std::cos(p.phi1), p.rho1 * std::sin(p.phi1), p.rho2 * std::cos(p.phi2),
          p.rho2 * std::sin(p.phi2)};
}

Point4 spheroidal_to_cartesian(const SpheroidalCoords& s) {
  validate(s);
  const double r1 = 0.5 * s.d * std::sqrt((s.xi + 1) * (1 + s.eta));
  const double r2 = 0.5 * s.d * std::sqrt((s.xi - 1) * (1 - s.eta));
  const double p1 = 0.5 * (s.alpha + s.gamma), p2 = 0.5 * (s.alpha - s.gamma);
  return {r1 * std::cos(p1), r1 * std::sin(p1), r2 * std::cos(p2), r2 * std::sin(p2)};
}

DoublePolarCoords cartesian_to_dp(const Point4& p) {
  DoublePolarCoords out;
  out.rho1 = std::hypot(p.u0, p.u1);
  out.rho2 = std::hypot(p.u2, p.u3);
  out.phi1 = wrap(std::atan2(p.u1, p.u0), kTwoPi);
  out.phi2 = wrap(std::atan2(p.u3, p.u2), kTwoPi);
  return out;
}

EulerCoords euler_from_dp(const DoublePolarCoords& p) {
  EulerCoords e;
  e.u = std::hypot(p.rho1, p.rho2);
  e.beta = 2.0 * std::atan2(p.rho2, p.rho1);
  // (α, γ) and (α+2π, γ+2π) name the same point
  double alpha = p.phi1 + p.phi2, gamma = p.phi1 - p.phi2;
  if (alpha >= kTwoPi) {
    alpha -= kTwoPi;
    gamma -= kTwoPi;
  }
  e.alpha = wrap(alpha, kTwoPi);
  e.gamma = wrap(gamma, 2 * kTwoPi);
  return e;
}

DoublePolarCoords dp_from_euler(const EulerCoords& e) {
  validate(e);
  DoublePolarCoords p;
  p.rho1 = e.u * std::cos(0.5 * e.beta);
  p.rho2 = e.beta == kPi ? e.u : e.u * std::sin(0.5 * e.beta);
  p.phi1 = wrap(0.5 * (e.alpha + e.gamma), kTwoPi);
  p.phi2 = wrap(0.5 * (e.alpha - e.gamma), kTwoPi);
  if (e.beta == kPi) p.rho1 = 0.0;
  return p;
}

EulerCoords cartesian_to_euler(const Point4& p) { return euler_from_dp(cartesian_to_dp(p)); }

double interfocus_distance(double R, double a) {
  if (!(R > 0) || !(a > 0)) throw DomainError("interfocus distance needs R > 0 and a > 0");
  return 2.0 * std::sqrt(R) / a;
}

KSImage ks_map(const Point4& p) {
  KSImage k;
  // (u0 + iu1)(u2 + iu3) with fused products
  k.x = 2.0 * std::fma(p.u0, p.u2, -p.u1 * p.u3);
  k.y = 2.0 * std::fma(p.u0, p.u3, p.u1 * p.u2);
  k.z = std::fma(p.u0, p.u0, p.u1 * p.u1) - std::fma(p.u2, p.u2, p.u3 * p.u3);
  k.gamma = cartesian_to_euler(p).gamma;
  return k;
}

}  // namespace singosc4
