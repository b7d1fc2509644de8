#pragma once

#include <stdexcept>
#include <string>

namespace wpe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point lies outside a chart domain, or a finite-difference stencil leaves it.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation precondition on parameters was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DerivativeError : public Error {
 public:
  using Error::Error;
};

// Linear solve or quadrature failed to reach its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace wpe
