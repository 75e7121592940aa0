#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qrtsim {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input or violated precondition (CLI maps this to exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A linear solve hit a (near-)singular system; carries the spectral point
// closest to the requested frequency.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& msg, Complex nearest)
      : Error(msg), nearest_eigenvalue(nearest) {}
  Complex nearest_eigenvalue;
};

// Rational-kernel construction failed (degenerate poles or a reconstruction
// mismatch beyond tolerance).
class KernelError : public Error {
 public:
  using Error::Error;
};

// Integrator step too large for the stiffest memory pole (strict mode).
class StabilityError : public Error {
 public:
  using Error::Error;
};

// A requested tolerance could not be met (strict mode), e.g. a stationarity
// probe that timed out.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrtsim
