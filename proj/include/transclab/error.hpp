#pragma once

#include <stdexcept>
#include <string>

namespace transclab {

/// Base for every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two radical elements (or an element and a matrix) live in different fields.
class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("field context mismatch") {}
  using Error::Error;
};

/// A configured resource cap (table size, search depth, dimension) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The answer could not be decided within the configured bounds.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input: JSON with the wrong shape, bad numerals.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace transclab
