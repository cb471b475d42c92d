#pragma once

#include <stdexcept>
#include <string>

namespace multimono {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside the domain of a profile (t <= 0, off a table, on a
/// coordinate hyperplane, stencil leaving the domain or crossing a breakpoint).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested derivative order or operation is not supported by the input.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A parameter violates its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An improper integral or norm that an operation requires to be finite is not.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace multimono
