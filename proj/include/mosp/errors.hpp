#ifndef MOSP_ERRORS_HPP
#define MOSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mosp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance or gadget-source invariant violated (zero machines, zero duration, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Schedule does not describe the instance: wrong shape, unassigned job or
/// machine index out of range. Distinct from a well-formed but infeasible schedule.
class MalformedScheduleError : public Error {
 public:
  using Error::Error;
};

/// Precondition of an operation not met by otherwise well-formed input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Arithmetic would leave the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A state cap, node budget or time limit was hit before the search finished.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Text or JSON input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mosp

#endif  // MOSP_ERRORS_HPP
