#pragma once

#include <stdexcept>
#include <string>

namespace slopedesign {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

/// Root isolation could not certify separation of the roots.
class Degenerate : public Error {
 public:
  using Error::Error;
};

class InvalidProblem : public Error {
 public:
  using Error::Error;
};

class AllDerivativesVanish : public Error {
 public:
  AllDerivativesVanish() : Error("all basis derivatives vanish at z") {}
};

class SingularSupport : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace slopedesign
