#pragma once

#include <stdexcept>
#include <string>

namespace friablelab {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input exceeds a table or a configured capacity cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Argument beyond the range covered by a precomputed table.
class RangeError : public CapacityError {
 public:
  using CapacityError::CapacityError;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Residue is not invertible modulo the given modulus.
class NonInvertibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical routine could not reach its accuracy target (bracket failure,
// residual above tolerance, non-real result that should be real, ...).
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace friablelab
