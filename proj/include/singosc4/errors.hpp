#pragma once

#include <stdexcept>
#include <string>

namespace singosc4 {

/// Argument outside the domain of a formula (bad quantum numbers, poles, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sector whose (m, s) do not give integer M1 = m+s, M2 = m-s.
class InvalidSector : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature or iteration failed to reach its tolerance within the cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::string diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace singosc4
