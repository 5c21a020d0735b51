#pragma once

#include <complex>
#include <string>
#include <vector>

#include "singosc4/half_int.hpp"

namespace singosc4 {

/// Physical constants. Default unit system μ = ω = ħ = 1, so a = 1.
struct SystemParams {
  double mu = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double a() const;
  /// 2μc_k/ħ², the strength entering δ_k.
  double coupling(int k) const;
  /// Throws DomainError unless μ, ω, ħ > 0 and c1, c2 ≥ 0.
  void validate() const;
};

/// Conserved charges of one (m, s) sector and the singularity shifts.
struct SectorParams {
  HalfInt m, s;
  int M1 = 0, M2 = 0;
  double delta1 = 0.0, delta2 = 0.0;
  double m1 = 0.0, m2 = 0.0;
  HalfInt m_plus, m_minus;

  double delta() const { return delta1 + delta2; }
  /// (-1)^{(m-s+|m-s|)/2}
  int phase() const { return M2 > 0 && M2 % 2 ? -1 : 1; }
  /// Largest N1 at level N, or -1 if the sector is absent at that level.
  int n1_max(int N) const;
  std::string str() const;
};

SectorParams sector(const SystemParams& params, HalfInt m, HalfInt s);

struct EulerQN {
  int N = 0;
  HalfInt j, m, s;
};

struct PolarQN {
  int N1 = 0, N2 = 0;
  int M1 = 0, M2 = 0;
  int N() const;
};

double energy(const SystemParams& params, int N, const SectorParams& sec);
double lambda_eigenvalue(HalfInt j, const SectorParams& sec);
/// Dimensionless Ω eigenvalue, Ω̃ = 2(N1 - N2) + m1 - m2; physical Ω = 2a²Ω̃.
double omega_tilde(const PolarQN& p, const SectorParams& sec);

std::vector<EulerQN> list_euler_states(int N, const SectorParams& sec);
std::vector<PolarQN> list_polar_states(int N, const SectorParams& sec);

/// Throws DomainError if q does not belong to sec.
void check_admissible(const EulerQN& q, const SectorParams& sec);
void check_admissible(const PolarQN& p, const SectorParams& sec);

// Wavefunctions. Normalization constants are positive and fixed by quadrature;
// signs are those of the analytic expressions (Z carries the sector phase).

std::complex<double> angular_Z(double beta, double alpha, double gamma, const EulerQN& q,
                               const SectorParams& sec);
double radial_R(double u, int N, HalfInt j, const SectorParams& sec, const SystemParams& params);
double phi_polar(double rho, int Na, int Ma, double delta_a, const SystemParams& params);

struct EulerCoords;
struct DoublePolarCoords;

std::complex<double> psi_euler(const EulerCoords& point, const EulerQN& q, const SectorParams& sec,
                               const SystemParams& params);
std::complex<double> psi_polar(const DoublePolarCoords& point, const PolarQN& p,
                               const SectorParams& sec, const SystemParams& params);

// Unnormalized profiles, shared with the quadrature oracle.
/// (cos β/2)^{m1} (sin β/2)^{m2} P^{(m2,m1)}_{j-m+}(cos β), exact at β = 0, π.
double angular_profile(double beta, HalfInt j, const SectorParams& sec);
/// (au)^L e^{-x/2} F(-N/2+j; L+2; x), x = a²u², L = 2j+δ.
double radial_profile(double u, int N, HalfInt j, const SectorParams& sec, const SystemParams& params);
/// x^{m/2} e^{-x/2} F(-Na; m+1; x), x = a²ρ², m = |Ma|+δa.
double polar_profile(double rho, int Na, int Ma, double delta_a, const SystemParams& params);

// Constants exactly as printed, for comparison with the numerical ones.
double printed_angular_norm(HalfInt j, const SectorParams& sec);  // includes the phase
double printed_radial_norm(int N, HalfInt j, const SectorParams& sec, const SystemParams& params);
double printed_polar_norm(int Na, int Ma, double delta_a, const SystemParams& params);

}  // namespace singosc4
