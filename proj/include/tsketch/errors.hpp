#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsketch {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside its documented domain (k < 2, p = 0, c < 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Vector or transform lengths disagree, or a length is not a power of two.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Two sketches (or feature vectors) were built from different randomness.
class IncompatibleSketchError : public Error {
 public:
  using Error::Error;
};

/// A floating-point postcondition failed (e.g. imaginary residue after ifft).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A request exceeds a hard size guard (exponential oracles, O(n^2) Gram).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed dataset text. Carries the 1-based line number of the fault.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsketch
