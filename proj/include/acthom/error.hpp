#pragma once

#include <stdexcept>
#include <string>

namespace acthom {

// Base for every error raised by the library. The CLI maps subclasses to exit
// codes: InvalidParameter/ParseError -> 2, Infeasible -> 3, anything else -> 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidGeometry : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row)
      : Error(what + " (row " + std::to_string(row) + ")"), row_(row) {}
  explicit ParseError(const std::string& what) : Error(what), row_(0) {}

  // 1-based row number, 0 when not tied to a row.
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class InvalidFiltration : public Error {
 public:
  using Error::Error;
};

}  // namespace acthom
