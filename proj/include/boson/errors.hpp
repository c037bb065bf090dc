#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boson {

/// A caller violated a documented precondition (bad level, exponent, dimension...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Frequency-shift and MSPT quantities only exist for even exponents.
class UnsupportedExponent : public DomainError {
 public:
  explicit UnsupportedExponent(int m)
      : DomainError("unsupported exponent m=" + std::to_string(m) +
                    ": frequency shifts require even m >= 2"),
        exponent_(m) {}

  int exponent() const noexcept { return exponent_; }

 private:
  int exponent_;
};

/// G(n) is too close to zero for the symmetrized operator form to be evaluated.
class NearSingularNormalization : public DomainError {
 public:
  NearSingularNormalization(double g)
      : DomainError("near-singular normalization: |G(n)| = " + std::to_string(g) +
                    " <= 1e-6"),
        g_(g) {}

  double value() const noexcept { return g_; }

 private:
  double g_;
};

class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace boson
