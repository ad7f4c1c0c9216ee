#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace srg {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent model description.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical procedure failed (non-convergence, overflow, inconsistency).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation requested at (or numerically at) a pole.
class PoleError : public NumericError {
 public:
  PoleError(const std::string& what, std::complex<double> pole)
      : NumericError(what), pole_(pole) {}
  std::complex<double> pole() const { return pole_; }

 private:
  std::complex<double> pole_;
};

}  // namespace srg
