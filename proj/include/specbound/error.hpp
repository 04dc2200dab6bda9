#pragma once

#include <stdexcept>
#include <string>

namespace specbound {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative radius, p < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not converge (step underflow, quadrature budget exhausted).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A requested value lies beyond the reachable range (e.g. H_a^{-1} past a finite domain).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The input violates a documented precondition (non-monotone u, gamma >= sup, u == 0).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A bracketing search hit its configured ceiling.
class SearchError : public Error {
 public:
  using Error::Error;
};

/// The warping function is not admissible (f <= 0, positive curvature).
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

/// The isoperimetric function is unusable (vanishes, non-integrable a.i.f.).
class InvalidProfileError : public Error {
 public:
  using Error::Error;
};

}  // namespace specbound
