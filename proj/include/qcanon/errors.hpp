#pragma once

#include <stdexcept>
#include <string>

namespace qcanon {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A violated precondition on user-supplied parameters.
class DomainError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

/// Raised when an internal consistency check fails. Any of these means a bug
/// (or a false mathematical assumption), never bad input.
class IntegrityError : public Error {
public:
  using Error::Error;
};

/// Exact division left a remainder in Z[v,v^-1].
class NotDivisible : public IntegrityError {
public:
  using IntegrityError::IntegrityError;
};

class RealizationError : public IntegrityError {
public:
  using IntegrityError::IntegrityError;
};

class SpanFailure : public IntegrityError {
public:
  using IntegrityError::IntegrityError;
};

class IntegralityFailure : public IntegrityError {
public:
  using IntegrityError::IntegrityError;
};

class AntisymmetryFailure : public IntegrityError {
public:
  using IntegrityError::IntegrityError;
};

class NonterminatingCorrection : public IntegrityError {
public:
  using IntegrityError::IntegrityError;
};

/// A linear system with no solution.
class Inconsistent : public Error {
public:
  Inconsistent(const std::string& what, size_t rank) : Error(what), rank_(rank) {}
  [[nodiscard]] size_t rank() const noexcept { return rank_; }

private:
  size_t rank_;
};

}  // namespace qcanon
