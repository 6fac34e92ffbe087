#pragma once

#include <stdexcept>
#include <string>

namespace lamring {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the operation's domain (bad degree, mismatched sizes, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input to the elementary-symmetric reduction is not symmetric.
class NotSymmetricError : public Error {
 public:
  NotSymmetricError() : Error("not symmetric") {}
};

// A Gram matrix failed the nondegeneracy invariant.
class DegenerateFormError : public Error {
 public:
  using Error::Error;
};

class NotSublagrangianError : public Error {
 public:
  NotSublagrangianError() : Error("not a sub-Lagrangian") {}
};

// Operands belong to different rings (or forms over different fields).
class RingMismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed exchange-format input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed; indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lamring
