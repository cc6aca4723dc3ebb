#pragma once

#include <stdexcept>
#include <string>

namespace graded {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// A shifted or convolved field would leave its grid.
struct SupportOverflow : Error {
  using Error::Error;
};

// Quadrature, extrapolation or iterative solve failed to reach tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct OverflowError : Error {
  using Error::Error;
};

}  // namespace graded
