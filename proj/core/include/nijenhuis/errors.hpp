#pragma once

#include <stdexcept>
#include <string>

namespace nijenhuis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unsupported family, rank or space parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Arguments that do not fit together (dimension mismatch, wrong family).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A structural assumption failed (non-diagonalizable torus, singular Gram matrix).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A floating-point computation could not be trusted.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace nijenhuis
