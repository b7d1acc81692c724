#pragma once

#include <stdexcept>
#include <string>

namespace multicubic {

/// Precondition violated by the caller (index out of range, arity mismatch).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed model, request, rational literal or grid specification.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The excluded critical exponent (alpha = 3n, or sum of p_ij = 3n).
class UnsupportedExponentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point where a power-type expression is undefined, e.g. ||0||^alpha with alpha < 0.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A control series that does not converge for the requested contraction sign.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace multicubic
