#pragma once

#include <stdexcept>
#include <string>

namespace deid {

/// Base for all recoverable engine errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (JSON, XML, embedding text).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a data invariant (span bounds, overlap, text mismatch).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A span boundary falls inside a token.
class AlignmentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Inconsistent dimensions or option values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite loss or gradient during training.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a precondition (shape mismatch, empty lattice, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractViolation(what);
}

}  // namespace deid
