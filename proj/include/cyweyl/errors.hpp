#pragma once

#include <stdexcept>
#include <string>

namespace cyweyl {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed input (bad index, unknown type tag,
/// point outside the admissible region, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A root factor whose denominator vanishes on a wall while its numerator
/// does not: the transversal product has no finite limit there.
class WallSingularityError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to meet the requested tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Malformed descriptor / problem file or expression.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cyweyl
