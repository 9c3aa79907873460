#pragma once

#include <stdexcept>
#include <string>

namespace nbint {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad masses, zero polynomial, n < 3, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two bodies coincide, or a trajectory hits the origin.
class SingularConfiguration : public Error {
 public:
  using Error::Error;
};

/// Darboux point with multiplier zero.
class DegenerateDarboux : public Error {
 public:
  using Error::Error;
};

/// Iterative solver did not converge, or its Jacobian is singular.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The W matrix does not have the aligned block form diag(A, -A/2).
class NotAligned : public Error {
 public:
  using Error::Error;
};

/// Indicial exponents requested at an ordinary point.
class NotSingular : public Error {
 public:
  using Error::Error;
};

/// Indicial exponents do not differ by a nonnegative integer.
class NoObstructionDefined : public Error {
 public:
  using Error::Error;
};

/// A continuation path comes too close to a singular point.
class ClearanceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nbint
