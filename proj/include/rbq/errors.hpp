#pragma once

#include <stdexcept>
#include <string>

namespace rbq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Input violates a structural requirement (symmetry, antisymmetry, real spectrum).
class StructureError : public Error {
public:
  using Error::Error;
};

/// A factorization failed or produced non-finite output.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Malformed external input (JSON files, CLI arguments).
class InputError : public Error {
public:
  using Error::Error;
};

std::string shape_string(long rows, long cols);

} // namespace rbq
