#pragma once

#include <stdexcept>
#include <string>

namespace tnn {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad index, malformed input, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two values from different Coxeter contexts were combined.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// A configurable size or length cap was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A machine-checked containment failed in checked mode.
class CheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace tnn
