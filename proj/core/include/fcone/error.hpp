#pragma once

#include <stdexcept>
#include <string>

namespace fcone {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (bad n, overlapping parts, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A stated precondition of a construction does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotBalanced : public Error {
 public:
  using Error::Error;
};

class NotFnef : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class NotPointed : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class MalformedSystem : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

// A self-check on a produced certificate failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fcone
