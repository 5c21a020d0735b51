#include "singosc4/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "singosc4/errors.hpp"

namespace singosc4 {

namespace {

constexpr double kIntegerTol = 1e-9;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_nonpositive_integer(double x, long* n = nullptr) {
  long k = 0;
  if (!near_integer(x, &k) || k > 0) return false;
  if (n) *n = k;
  return true;
}

}  // namespace

bool near_integer(double x, long* value) {
  const double r = std::nearbyint(x);
  if (std::abs(x - r) > kIntegerTol * std::max(1.0, std::abs(x))) return false;
  if (value) *value = static_cast<long>(r);
  return true;
}

SignedLog SignedLog::from(double x) {
  if (x == 0.0) return zero();
  return {std::log(std::abs(x)), x < 0 ? -1 : 1};
}

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

SignedLog& SignedLog::operator*=(const SignedLog& o) {
  sign *= o.sign;
  log_abs = sign == 0 ? 0.0 : log_abs + o.log_abs;
  return *this;
}

SignedLog& SignedLog::operator/=(const SignedLog& o) {
  if (o.sign == 0) throw DomainError("division by zero in signed-log arithmetic");
  sign *= o.sign;
  log_abs = sign == 0 ? 0.0 : log_abs - o.log_abs;
  return *this;
}

SignedLog sum_signed(std::span<const SignedLog> terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0) top = std::max(top, t.log_abs);
  if (!std::isfinite(top)) return SignedLog::zero();

  double sum = 0.0, comp = 0.0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    const double x = t.sign * std::exp(t.log_abs - top);
    const double s = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - s) + x : (x - s) + sum;
    sum = s;
  }
  SignedLog r = SignedLog::from(sum + comp);
  if (r.sign != 0) r.log_abs += top;
  return r;
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma requires x > 0, got " + num(x));
  return std::lgamma(x);
}

SignedLog gamma_signed(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("Gamma pole at " + num(x));
  int sign = 1;
  const double lg = ::lgamma_r(x, &sign);
  return {lg, sign};
}

SignedLog rgamma_signed(double x) {
  if (is_nonpositive_integer(x)) return SignedLog::zero();
  int sign = 1;
  const double lg = ::lgamma_r(x, &sign);
  return {-lg, sign};
}

double pochhammer(double a, int n) {
  if (n < 0) throw DomainError("pochhammer requires n >= 0");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

SignedLog pochhammer_signed(double a, int n) {
  if (n < 0) throw DomainError("pochhammer requires n >= 0");
  SignedLog p{0.0, 1};
  for (int k = 0; k < n; ++k) p *= SignedLog::from(a + k);
  return p;
}

double jacobi_p(int n, double a, double b, double x) {
  if (n < 0) throw DomainError("jacobi_p requires n >= 0");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("jacobi_p requires a, b > -1");
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = 0.5 * (a - b + (a + b + 2.0) * x);
  for (int k = 1; k < n; ++k) {
    // 2(k+1)(k+a+b+1)(2k+a+b) P_{k+1} =
    //   (2k+a+b+1)[(2k+a+b+2)(2k+a+b) x + a²-b²] P_k - 2(k+a)(k+b)(2k+a+b+2) P_{k-1}
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * (k + 1) * (k + a + b + 1) * s;
    const double c2 = (s + 1) * ((s + 2) * s * x + a * a - b * b);
    const double c3 = 2.0 * (k + a) * (k + b) * (s + 2);
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double hyp1f1_terminating(int n, double c, double x) {
  if (n < 0) throw DomainError("hyp1f1_terminating requires n >= 0");
  if (!(c > 0.0)) throw DomainError("hyp1f1_terminating requires c > 0, got " + num(c));
  if (n <= 2) {
    // direct sum, compensated
    double sum = 0.0, comp = 0.0, term = 1.0;
    for (int k = 0; k <= n; ++k) {
      const double s = sum + term;
      comp += std::abs(sum) >= std::abs(term) ? (sum - s) + term : (term - s) + sum;
      sum = s;
      term *= (k - n) * x / ((c + k) * (k + 1));
    }
    return sum + comp;
  }
  // Contiguous relation in the degree: (c+k) F_{k+1} = (2k+c-x) F_k - k F_{k-1}.
  double f0 = 1.0;
  double f1 = 1.0 - x / c;
  for (int k = 1; k < n; ++k) {
    const double f2 = ((2.0 * k + c - x) * f1 - k * f0) / (c + k);
    f0 = f1;
    f1 = f2;
  }
  return f1;
}

double gauss_2f1_unit(double a, double b, double c) {
  long na = 0, nb = 0;
  const bool ta = is_nonpositive_integer(a, &na);
  const bool tb = is_nonpositive_integer(b, &nb);
  if (ta || tb) {
    long len = ta && tb ? std::min(-na, -nb) : (ta ? -na : -nb);
    std::vector<SignedLog> terms;
    SignedLog t{0.0, 1};
    for (long k = 0; k <= len; ++k) {
      terms.push_back(t);
      if (k == len) break;
      if (std::abs(c + k) < kIntegerTol) throw DomainError("2F1 lower parameter pole inside the sum");
      t *= SignedLog::from((a + k) * (b + k) / ((c + k) * (k + 1)));
    }
    return sum_signed(terms).value();
  }
  if (!(c - a - b > 0.0)) throw DomainError("2F1 at unit argument diverges: c-a-b = " + num(c - a - b));
  SignedLog r = gamma_signed(c) * gamma_signed(c - a - b) * rgamma_signed(c - a) * rgamma_signed(c - b);
  return r.value();
}

namespace {

// Shared core of the terminating ₃F₂ sums. With `regularize_b2` each term is
// divided by Γ(b2 + k) instead of (b2)_k.
SignedLog hyp3f2_core(double a1, double a2, double a3, double b1, double b2, bool regularize_b2) {
  long len = -1;
  for (double a : {a1, a2, a3}) {
    long n = 0;
    if (is_nonpositive_integer(a, &n)) len = len < 0 ? -n : std::min(len, -n);
  }
  if (len < 0) {
    throw DomainError("3F2 is not terminating: (" + num(a1) + ", " + num(a2) + ", " + num(a3) + ")");
  }

  std::vector<SignedLog> terms;
  terms.reserve(static_cast<std::size_t>(len) + 1);
  SignedLog t{0.0, 1};
  // Regularized sums may start at zero (1/Γ at a pole) and become nonzero later,
  // so the running term is tracked without the b2 factor.
  SignedLog base{0.0, 1};
  for (long k = 0; k <= len; ++k) {
    if (regularize_b2) {
      terms.push_back(base * rgamma_signed(b2 + k));
    } else {
      terms.push_back(t);
    }
    if (k == len) break;
    if (std::abs(b1 + k) < kIntegerTol) throw DomainError("3F2 lower parameter b1 pole inside the sum");
    SignedLog ratio = SignedLog::from(a1 + k) * SignedLog::from(a2 + k) * SignedLog::from(a3 + k) /
                      (SignedLog::from(b1 + k) * SignedLog::from(k + 1.0));
    if (regularize_b2) {
      base *= ratio;
    } else {
      if (std::abs(b2 + k) < kIntegerTol) throw DomainError("3F2 lower parameter b2 pole inside the sum");
      t *= ratio / SignedLog::from(b2 + k);
    }
  }
  return sum_signed(terms);
}

}  // namespace

double hyp3f2_unit_terminating(double a1, double a2, double a3, double b1, double b2) {
  return hyp3f2_core(a1, a2, a3, b1, b2, false).value();
}

SignedLog hyp3f2_unit_terminating_regularized(double a1, double a2, double a3, double b1, double b2) {
  return hyp3f2_core(a1, a2, a3, b1, b2, true);
}

double clebsch_gordan_continued(double a, double alpha, double b, double beta, double c, double gamma) {
  if (std::abs(gamma - alpha - beta) > kIntegerTol * std::max(1.0, std::abs(gamma))) return 0.0;
  long n = 0;
  if (!near_integer(a - alpha, &n) || n < 0) {
    throw DomainError("CG requires a - alpha to be a nonnegative integer, got " + num(a - alpha));
  }

  // Γ(x+1) for every factorial outside the terminating sum; all must be regular
  // and positive for the square root to be real.
  auto fact = [](double x) {
    if (!(x > -1.0 + kIntegerTol)) throw DomainError("factorial of negative argument " + num(x) + " in CG");
    return ln_gamma(x + 1.0);
  };
  if (!(2.0 * c + 1.0 > 0.0)) throw DomainError("CG requires 2c+1 > 0");

  // Racah form of the sum: same function as the ₃F₂ representation but with
  // bounded term magnitudes, so it stays accurate where the ₃F₂ terms cancel.
  const double log_pre = 0.5 * (std::log(2.0 * c + 1.0) + fact(c + a - b) + fact(c - a + b) + fact(a + b - c) -
                                fact(a + b + c + 1.0) + fact(c + gamma) + fact(c - gamma) + fact(a - alpha) +
                                fact(a + alpha) + fact(b - beta) + fact(b + beta));
  std::vector<SignedLog> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    SignedLog t{log_pre, (k % 2 == 0) ? 1 : -1};
    for (double x : {a + b - c - k, a - alpha - k, b + beta - k, c - b + alpha + k, c - a - beta + k})
      t *= rgamma_signed(x + 1.0);
    t *= SignedLog{-std::lgamma(k + 1.0), 1};
    if (t.sign != 0) terms.push_back(t);
  }
  return sum_signed(terms).value();
}

}  // namespace singosc4
