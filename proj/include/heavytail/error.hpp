#pragma once

#include <stdexcept>
#include <string>

namespace heavytail {

// Base of every error raised by the library. The CLI maps these to exit
// status 1; anything else escaping is a bug.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// Malformed or unusable input data (files, series contents).
class DataError : public Error {
public:
  using Error::Error;
};

// A window or segment with zero variance where a rescaled range was requested.
class DegenerateSegment : public Error {
public:
  using Error::Error;
};

// A model fit produced parameters outside the model's domain.
class FitError : public Error {
public:
  using Error::Error;
};

// A numerical routine failed to reach its tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double achieved_tolerance)
      : Error(what), achieved_(achieved_tolerance) {}

  double achieved_tolerance() const noexcept { return achieved_; }

private:
  double achieved_;
};

} // namespace heavytail
