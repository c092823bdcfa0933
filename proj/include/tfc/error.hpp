#pragma once

#include <stdexcept>
#include <string>

namespace tfc {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to converge; `last_residual` is the final residual norm.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Truncated domain too short for the requested tail accuracy.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Construction parameters are inconsistent (cutoff widths, glue widths).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The trapping potential produces a domain the toolkit does not handle.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// A sampling band holds no grid nodes.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Invalid command-line or configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfc
