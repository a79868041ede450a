#pragma once

#include <stdexcept>
#include <string>

namespace knapq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or invariant-violating input file / JSON value.
struct ParseError : Error {
  using Error::Error;
};

// Bad argument to an operation (alpha < 1, threshold below optimum, ...).
struct ParamError : Error {
  using Error::Error;
};

// A pseudopolynomial table would exceed the configured capacity bound.
struct CapacityError : Error {
  using Error::Error;
};

// A brute-force enumeration would exceed the configured item cap.
struct EnumerationError : Error {
  using Error::Error;
};

}  // namespace knapq
