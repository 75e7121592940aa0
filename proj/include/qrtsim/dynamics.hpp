#pragma once

#include <vector>

#include "qrtsim/model.hpp"
#include "qrtsim/superop.hpp"

namespace qrtsim {

struct Trajectory {
  std::vector<double> t;
  std::vector<Mat> states;
};

// Throws ValidationError unless rho is Hermitian (1e-12), unit trace (1e-12)
// and positive semidefinite (eigenvalues >= -1e-10).
void validate_density(const Mat& rho);

// Throws ValidationError unless the grid is non-empty, finite, non-negative
// and strictly increasing.
void validate_time_grid(const std::vector<double>& tgrid);

// Evolves a single generator: rho(t) = exp(L t) rho0.  A grid point at
// exactly t = 0 returns the initial state bit-for-bit.
Trajectory propagate_member(const Superoperator& l, const Mat& rho0,
                            const std::vector<double>& tgrid);

// Ensemble-averaged state rho_S(t) = sum_R P_R exp(L_R t) rho0
// (every member launches from the same initial condition).
Trajectory ensemble_density(const TlsModel& model, const Mat& rho0,
                            const std::vector<double>& tgrid);

// Member states {rho_R(t)} at a single time, index-ascending.
std::vector<Mat> member_states_at(const TlsModel& model, const Mat& rho0,
                                  double t);

// Averaged propagator G(tau) = sum_R P_R exp(L_R tau).
Superoperator averaged_propagator(const TlsModel& model, double tau);

// Frequency-domain generator obtained from the averaged resolvent
// <G_R(u)> = <(uI - L_R)^{-1}>:
//   mhat = <G>^{-1} <G (-L_R)>             (memory matrix)
//   lu   = <G>^{-1} <G D_R>                (dissipative generator; D_R is the
//                                           member dissipator, drive excluded)
// Throws SingularityError when u collides with a member pole or <G> is
// singular.
struct LaplaceGenerator {
  Superoperator mhat;
  Superoperator lu;
};

LaplaceGenerator laplace_generator(const TlsModel& model, Complex u);

// Doubling probe for effective stationarity of rho_S: the first probe time
// with ||d rho_S/dt||_max < 1e-10, capped at 1e3 / (slowest positive rate).
struct StationarityProbe {
  double time = 0.0;
  bool reached = false;
  double residual = 0.0;  // derivative norm at the returned time
};

StationarityProbe stationarity_time(const TlsModel& model, const Mat& rho0);

// ||G(t + tau) - G(tau) G(t)||_max: zero exactly for a single-rate ensemble,
// strictly positive when the rate distribution has spread.
double semigroup_defect(const TlsModel& model, double t, double tau);

}  // namespace qrtsim
