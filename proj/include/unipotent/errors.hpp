#pragma once

#include <stdexcept>
#include <string>

namespace unipotent {

// All library errors derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Not enough known 2-adic digits to decide the requested quantity.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class NotASquare : public Error {
 public:
  using Error::Error;
};

class NotSolvable : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, int bound)
      : Error(what + " (search bound " + std::to_string(bound) + ")"), bound_(bound) {}
  int bound() const noexcept { return bound_; }

 private:
  int bound_;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace unipotent
