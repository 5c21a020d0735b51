#pragma once

// Special-function kernel: gamma-type functions, orthogonal polynomials,
// terminating hypergeometric series and the continued Clebsch-Gordan
// coefficient. All functions are pure.

#include <span>

namespace singosc4 {

/// Real number carried as sign * exp(log_abs); sign == 0 means exactly zero.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  static SignedLog zero() { return {0.0, 0}; }
  static SignedLog from(double x);
  double value() const;

  SignedLog& operator*=(const SignedLog& o);
  SignedLog& operator/=(const SignedLog& o);
  friend SignedLog operator*(SignedLog a, const SignedLog& b) { return a *= b; }
  friend SignedLog operator/(SignedLog a, const SignedLog& b) { return a /= b; }
};

/// Sum of sign-tracked terms, scaled by the largest magnitude and accumulated
/// with Neumaier compensation.
SignedLog sum_signed(std::span<const SignedLog> terms);

/// ln Γ(x) for x > 0.
double ln_gamma(double x);

/// Γ(x) as a signed logarithm; negative non-integers allowed, poles throw.
SignedLog gamma_signed(double x);

/// 1/Γ(x) as a signed logarithm; exactly zero at the poles x = 0, -1, -2, ...
SignedLog rgamma_signed(double x);

/// Rising factorial (a)_n.
double pochhammer(double a, int n);
SignedLog pochhammer_signed(double a, int n);

/// Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence in n.
double jacobi_p(int n, double a, double b, double x);

/// Terminating confluent series F(-n; c; x).
double hyp1f1_terminating(int n, double c, double x);

/// Gauss ₂F₁(a, b; c; 1).
double gauss_2f1_unit(double a, double b, double c);

/// Terminating ₃F₂(a1, a2, a3; b1, b2; 1).
double hyp3f2_unit_terminating(double a1, double a2, double a3, double b1, double b2);

/// ₃F₂(a1, a2, a3; b1, b2; 1) / Γ(b2), a terminating sum whose terms carry
/// 1/Γ(b2 + k); finite when b2 is a nonpositive integer.
SignedLog hyp3f2_unit_terminating_regularized(double a1, double a2, double a3, double b1, double b2);

/// Clebsch-Gordan coefficient C^{cγ}_{aα;bβ} continued to real arguments, every
/// factorial read as Γ(x+1) and 1/Γ taken as zero at poles. Summed in Racah
/// form, which equals the ₃F₂ representation. Requires a-α to be a nonnegative integer.
double clebsch_gordan_continued(double a, double alpha, double b, double beta, double c, double gamma);

/// Nearest integer if x is within 1e-9 of one.
bool near_integer(double x, long* value = nullptr);

}  // namespace singosc4
