#pragma once

#include <stdexcept>
#include <string>

namespace minunc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class NonHermitian : public Error {
public:
  using Error::Error;
};

class FactorizationError : public Error {
public:
  using Error::Error;
};

class EigenFailure : public Error {
public:
  using Error::Error;
};

/// A variance required to be positive (e.g. the denominator of a minimizer) vanished.
class ZeroVariance : public Error {
public:
  using Error::Error;
};

class InvalidM : public Error {
public:
  using Error::Error;
};

/// Discretization failed its extent or convergence check.
class GridTooCoarse : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

/// Every optimizer restart failed to visit a feasible point.
class NoProgress : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace minunc
