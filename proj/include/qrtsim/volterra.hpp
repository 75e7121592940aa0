#pragma once

#include <vector>

#include "qrtsim/kernel.hpp"
#include "qrtsim/types.hpp"

namespace qrtsim {

// One memory term of a linear integro-differential system:
//   integral_0^t k_m(t - s) [B_m x(s) + c_m] ds
// with k_m in pole-residue form.  The delta part of the kernel acts
// instantaneously and is folded into the local drift.
struct MemoryChannel {
  RationalKernel kernel;
  Mat b;
  CVec c;
};

// dx/dt = A0 x + b0 + sum_m integral_0^t k_m(t-s) [B_m x(s) + c_m] ds
struct VolterraProblem {
  Mat a0;
  CVec b0;
  std::vector<MemoryChannel> channels;
};

struct VolterraResult {
  std::vector<double> t;
  std::vector<CVec> x;
  // h * max|pole| exceeded 0.1 somewhere (accuracy warning in non-strict mode)
  bool step_warning = false;
  double stability_product = 0.0;
};

// Integrates the Volterra system on a uniform grid by augmenting the state
// with one exponential accumulator per kernel pole (which turns the
// convolution into a local ODE solved exactly by the quadrature) and running
// fixed-step classical RK4, one step per grid interval.
//
// Grid must be uniform (ValidationError otherwise).  If the step is too large
// for the stiffest kernel pole (h max|p| > 0.1), strict mode throws
// StabilityError; otherwise the result carries a warning flag.
VolterraResult volterra_evolve(const VolterraProblem& problem, const CVec& x0,
                               const std::vector<double>& tgrid,
                               bool strict = false);

}  // namespace qrtsim
