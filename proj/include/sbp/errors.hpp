#pragma once

#include <stdexcept>
#include <string>

namespace sbp {

/// Bad arguments supplied by the caller (dimension mismatch, s = 0, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters that are well-formed but outside what the library supports
/// (r < s, grids too small for the closure, CFL table misses).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical guarantee failed; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iterative numerics gave up (eigensolver, search caps, unstable runs).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time integration blew up.
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sbp
