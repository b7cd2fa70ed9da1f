#pragma once

#include <stdexcept>
#include <string>

namespace distgraph {

// Base for every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class StrategyUnsupported : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionFloorError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateFit : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// lambda admits no configuration of the graph
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(const std::string& what, long long lambda)
      : Error(what), lambda_(lambda) {}
  long long lambda() const { return lambda_; }

 private:
  long long lambda_;
};

class ZeroForm : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace distgraph
