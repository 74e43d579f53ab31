#pragma once

#include <stdexcept>
#include <string>

namespace ffp {

/// Base of every error the library raises.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument is outside the operation's domain.
class ParameterError : public Error {
   public:
    using Error::Error;
};

/// An enumeration or sum would exceed the configured complexity guard.
class GuardError : public Error {
   public:
    using Error::Error;
};

/// The input is a degenerate object (zero polynomial, empty root set) where the
/// contract requires a proper one.
class DegenerateInput : public Error {
   public:
    using Error::Error;
};

/// Two independent computations of the same quantity disagree. This is the only
/// error class that signals a mathematical failure rather than bad input.
class InvariantViolation : public Error {
   public:
    using Error::Error;
};

/// An iterative method did not reach its tolerance within the iteration cap.
class ConvergenceError : public Error {
   public:
    using Error::Error;
};

}  // namespace ffp
