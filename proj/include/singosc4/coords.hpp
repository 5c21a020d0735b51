#pragma once

namespace singosc4 {

struct Point4 {
  double u0 = 0, u1 = 0, u2 = 0, u3 = 0;
  double norm2() const { return u0 * u0 + u1 * u1 + u2 * u2 + u3 * u3; }
};

/// u ≥ 0, α ∈ [0,2π), β ∈ [0,π], γ ∈ [0,4π)
struct EulerCoords {
  double u = 0, alpha = 0, beta = 0, gamma = 0;
};

/// ρ1, ρ2 ≥ 0, φ1, φ2 ∈ [0,2π)
struct DoublePolarCoords {
  double rho1 = 0, rho2 = 0, phi1 = 0, phi2 = 0;
};

/// ξ ≥ 1, η ∈ [-1,1], α ∈ [0,2π), γ ∈ [0,4π), d > 0
struct SpheroidalCoords {
  double xi = 1, eta = 0, alpha = 0, gamma = 0, d = 1;
};

struct KSImage {
  double x = 0, y = 0, z = 0, gamma = 0;
};

void validate(const EulerCoords& e);
void validate(const DoublePolarCoords& p);
void validate(const SpheroidalCoords& s);

Point4 euler_to_cartesian(const EulerCoords& e);
Point4 dp_to_cartesian(const DoublePolarCoords& p);
Point4 spheroidal_to_cartesian(const SpheroidalCoords& s);

EulerCoords cartesian_to_euler(const Point4& p);
DoublePolarCoords cartesian_to_dp(const Point4& p);

/// ρ1 = u cos β/2, ρ2 = u sin β/2, φ1 = (α+γ)/2, φ2 = (α-γ)/2 (angles reduced).
DoublePolarCoords dp_from_euler(const EulerCoords& e);
EulerCoords euler_from_dp(const DoublePolarCoords& p);

/// Interfocus distance d = 2√R / a.
double interfocus_distance(double R, double a);

/// x + iy = 2 z1 z2, z = |z1|² - |z2|²; γ is the Euler angle of the point,
/// arg z1 - arg z2 on the branch fixed by α ∈ [0,2π).
KSImage ks_map(const Point4& p);

}  // namespace singosc4
