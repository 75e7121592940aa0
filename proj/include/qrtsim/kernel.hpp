#pragma once

#include <vector>

#include "qrtsim/ensemble.hpp"
#include "qrtsim/types.hpp"

namespace qrtsim {

// Memory kernel in pole-residue form:
//   frequency domain  K(u) = markov_weight + sum_k residues_k / (u - poles_k)
//   time domain       k(t) = markov_weight * delta(t) + sum_k residues_k e^{poles_k t}
// All poles have negative real part for admissible rate ensembles.
struct RationalKernel {
  double markov_weight = 0.0;
  std::vector<Complex> poles;
  std::vector<Complex> residues;

  Complex laplace(Complex u) const;
  // Smooth (non-delta) part of the time-domain kernel.
  Complex memory_at(double t) const;
  double max_pole_abs() const;
};

enum class KernelKind {
  population,  // relaxation kernel over dressed rates gamma_R
  coherence,   // dephasing kernel over rates gamma_R/2 + gamma_phi
};

// Exact pole-residue decomposition of the dressed frequency-domain kernel
//   K(u) = <gamma e^{-...}> / <...> = <g/(u+g)> / <1/(u+g)>
// for the effective rate set selected by `kind` (g = dressed rates for
// population, g = dressed/2 + gamma_phi for coherence).  The input ensemble
// must already carry dressed rates.  Polynomial construction and root finding
// run in 50-digit arithmetic; the returned double-precision form is verified
// against the direct ratio at 20 sample frequencies to relative 1e-10 and a
// KernelError is thrown on mismatch.
RationalKernel invert_rational_kernel(const RateEnsemble& dressed,
                                      KernelKind kind, double gamma_phi);

// Memory kernels of the driven Bloch equations: transverse-x, transverse-y,
// longitudinal and the cross y/z coupling.  At omega = 0 these reduce exactly
// to (coherence, coherence, population, 0).
struct DrivenKernelSet {
  RationalKernel gamma_x;
  RationalKernel gamma_y;
  RationalKernel gamma_z;
  RationalKernel upsilon;
};

DrivenKernelSet driven_rational_kernels(const RateEnsemble& dressed,
                                        double gamma_phi, double omega);

}  // namespace qrtsim
