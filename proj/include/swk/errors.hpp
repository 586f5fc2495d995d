#pragma once

#include <stdexcept>
#include <string>

namespace swk {

/// Base class for every error raised by the library. The CLI maps each
/// subclass to a distinct process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad descriptor, wrong weight length...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The coefficient ring cannot represent a requested quantity, e.g. an odd
/// power of the square root of q when none was supplied.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Sizes of matrices, vectors or blocks do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug signal.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace swk
