#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace germkit {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed germ text. `position` is a 0-based byte offset into the input.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/// A series query could not be answered below its truncation degree.
class TruncationError : public Error {
  public:
    using Error::Error;
};

/// The germ has no finite y-order below the truncation degree.
class DegenerateError : public Error {
  public:
    using Error::Error;
};

/// Input does not have the shape an operation requires.
class ShapeError : public Error {
  public:
    using Error::Error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Floating-point stage failed (non-convergence, ambiguous root counts, ...).
class NumericError : public Error {
  public:
    using Error::Error;
};

} // namespace germkit
