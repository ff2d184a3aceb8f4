#pragma once

#include <stdexcept>
#include <string>

namespace dstable {

// Parameters outside a family's admissible domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A normalizing parameter p(n) that falls outside the thinning family's
// domain (e.g. Example 1 with m > 1 needs p < kappa).
class AdmissibilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A transform that cannot be evaluated at the requested point
// (vanishing denominator, non-finite result).
class EvaluationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Coefficient extraction whose certified error bound exceeds the tolerance.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bisection that failed to bracket or converge.
class InversionError : public std::runtime_error {
 public:
  InversionError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace dstable
