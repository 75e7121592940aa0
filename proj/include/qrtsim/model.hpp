#pragma once

#include <string>
#include <vector>

#include "qrtsim/ensemble.hpp"
#include "qrtsim/superop.hpp"

namespace qrtsim {

// Two-level emitter in a thermal environment whose relaxation rate is drawn
// from a static random ensemble.  Works in the frame rotating at the emitter
// frequency omega_a (which therefore never enters the dynamics and is kept as
// metadata only); the effective Hamiltonian is (omega/2) sigma_x, hbar = 1.
//
// Basis convention: index 0 is the excited state |+>, index 1 the ground
// state |->; sigma = |-><+| lowers, sigma^dag sigma projects onto |+>.
struct TlsModel {
  RateEnsemble ensemble;   // bare rates gamma'_R
  double n_th = 0.0;       // thermal occupation of the environment
  double gamma_phi = 0.0;  // pure dephasing rate
  double omega = 0.0;      // Rabi frequency of the resonant drive
  double omega_a = 0.0;    // emitter frequency (metadata only)

  // Thermally dressed relaxation rate gamma_R = gamma'_R (1 + 2 n_th).
  double dressed_rate(int i) const;
  // Coherence decay rate gamma_R / 2 + gamma_phi.
  double phi_rate(int i) const;
  std::vector<double> dressed_rates() const;
  std::vector<double> phi_rates() const;
  // Dressed rates with the original weights.
  RateEnsemble dressed_ensemble() const;
  // Coherence-channel rates (gamma_R/2 + gamma_phi) with the same weights.
  RateEnsemble phi_ensemble() const;

  // Ensemble mean of the dressed rate; time unit for figure outputs.
  double gamma_mean() const;

  int size() const { return static_cast<int>(ensemble.rates.size()); }

  // Thermal equilibrium populations and inversion:
  // pi_plus = n_th/(1+2 n_th), pi_minus = (1+n_th)/(1+2 n_th),
  // sz_inf = -1/(1+2 n_th).
  double pi_plus() const;
  double pi_minus() const;
  double sz_inf() const;
};

// Pauli and ladder operators in the {|+>, |->} basis.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat sigma_minus();  // |-><+|
Mat sigma_plus();   // |+><-|

// Named observable lookup for the CLI: sx, sy, sz, sp, sm, id.
Mat operator_by_name(const std::string& name);

// Density matrix (I + r . sigma)/2 for a Bloch vector r; |r| may not exceed
// 1 + 1e-12.
Mat bloch_state(double sx, double sy, double sz);

// Bloch components (S_X, S_Y, S_Z) of a 2x2 density matrix.
Eigen::Vector3d bloch_of_state(const Mat& rho);

// Thermal relaxation dissipator at unit bare rate: coefficient matrix
// diag(1 + n_th, n_th) over jump operators {sigma, sigma^dag}.
Superoperator thermal_dissipator(const HermitianBasis& basis, double n_th);

// Pure dephasing dissipator at unit rate: single jump operator sigma_z.
Superoperator dephasing_dissipator(const HermitianBasis& basis);

// Full dissipative part of member i:
// gamma'_i * thermal + (gamma_phi / 2) * dephasing.
Superoperator member_dissipator(const TlsModel& model,
                                const HermitianBasis& basis, int i);

// Complete generator of member i: -i[(omega/2) sigma_x, .] + dissipator.
Superoperator member_liouvillian(const TlsModel& model,
                                 const HermitianBasis& basis, int i);

// All member generators, index-ascending.
std::vector<Superoperator> build_liouvillians(const TlsModel& model,
                                              const HermitianBasis& basis);

}  // namespace qrtsim
