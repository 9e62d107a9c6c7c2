#pragma once

#include <stdexcept>
#include <string>

namespace bruhat {

// Base of every error raised by the library. The CLI maps each subclass to a
// fixed exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Two matrices that should live in one class A(R,S) do not.
class ClassMismatch : public Error {
 public:
  using Error::Error;
};

class InfeasibleMargins : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

// The u' != u'' requirement of the product construction failed.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace bruhat
