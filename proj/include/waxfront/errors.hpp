#pragma once

#include <stdexcept>
#include <string>

namespace waxfront {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NoSteadyState : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class NonPositiveEigenfunction : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class InsufficientCoverage : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class InvalidPhysical : public Error {
 public:
  using Error::Error;
};

class DegenerateFront : public Error {
 public:
  using Error::Error;
};

/// Raised on a malformed config document. `line` is 0 when the error is a
/// field-level problem rather than a syntax problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field)
      : Error(what), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// No steady state exists unless cooling beats the incoming oil flux.
inline void require_growth(double k) {
  if (!(k > 1.0)) {
    throw NoSteadyState("k = " + std::to_string(k) +
                        ": a wax layer exists only for k > 1 (cooling must "
                        "exceed the heat supplied by the oil)");
  }
}

}  // namespace waxfront
