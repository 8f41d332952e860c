#pragma once

#include <stdexcept>
#include <string>

namespace fockcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Fock index or matrix dimension mismatch.
class IndexError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Bad tolerances, grid sizes, or truncation settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The Fock truncation is too small for the requested accuracy.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An optimizer failed to bracket or converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSpaceError : public Error {
 public:
  using Error::Error;
};

}  // namespace fockcert
