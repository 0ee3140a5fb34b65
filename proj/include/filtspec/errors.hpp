#pragma once

#include <stdexcept>
#include <string>

namespace filtspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (negative band,
/// index below 1 on a unilateral basis, empty interval, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input that must be symmetric is not.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this kind of operator or symbol.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Incompatible pieces were combined, or a config file is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The supplied data is too thin to support the requested diagnostic.
class DiagnosticError : public Error {
 public:
  using Error::Error;
};

}  // namespace filtspec
