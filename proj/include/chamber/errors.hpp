#pragma once

#include <stdexcept>
#include <string>

namespace chamber {

/// Base of every error raised by the library. Each subclass corresponds to a
/// distinct failure mode so callers (notably the CLI) can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MixedPiPower : public Error {
 public:
  using Error::Error;
};

class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

class UncancelledSingularity : public Error {
 public:
  using Error::Error;
};

class UnsupportedParameters : public Error {
 public:
  using Error::Error;
};

class DimensionCapExceeded : public Error {
 public:
  using Error::Error;
};

class IdentityFailure : public Error {
 public:
  IdentityFailure(const std::string& what, std::string lhs, std::string rhs)
      : Error(what), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}
  const std::string& lhs() const { return lhs_; }
  const std::string& rhs() const { return rhs_; }

 private:
  std::string lhs_;
  std::string rhs_;
};

class PositivityViolation : public Error {
 public:
  using Error::Error;
};

class InfiniteVarianceSuspected : public Error {
 public:
  using Error::Error;
};

class MissingCoefficient : public Error {
 public:
  using Error::Error;
};

class IncomparableInputs : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace chamber
