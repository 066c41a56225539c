#pragma once

#include <stdexcept>
#include <string>

namespace worldsys {

/// Base of every error raised by the library. The CLI maps each subclass to
/// its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (CSV row, parameter line).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Function evaluated outside its domain (e.g. a trend at or past t0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (degenerate design, non-finite objective).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace worldsys
