#pragma once

#include <stdexcept>
#include <string>

namespace ucaw {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input: algebra files, terms, words, tuple lists.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A documented precondition relating several inputs does not hold.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A tuple, candidate or time budget ran out before the computation finished.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace ucaw
