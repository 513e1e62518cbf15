#pragma once

#include <stdexcept>
#include <string>

namespace morsept {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of budget; carries the best estimate reached.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// Partial sums of an oscillatory integral did not settle.
class OscillatoryError : public Error {
 public:
  using Error::Error;
};

/// The q-term denominator vanished or changed sign at rho.
class SingularConfigurationError : public Error {
 public:
  SingularConfigurationError(const std::string& what, double rho) : Error(what), rho_(rho) {}
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

/// A potential sample was not finite.
class DiscretizationError : public Error {
 public:
  DiscretizationError(const std::string& what, std::size_t node) : Error(what), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

/// An eigenfunction did not decay at the edge of the box.
class GridTooSmallError : public Error {
 public:
  using Error::Error;
};

/// Invalid command line or configuration file.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace morsept
