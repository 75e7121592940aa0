#pragma once

#include <vector>

#include "qrtsim/dynamics.hpp"
#include "qrtsim/model.hpp"

namespace qrtsim {

// Two-time averages over the rate ensemble at waiting time t and lags tau:
//   exact:     <O(t) A(t+tau)> = sum_R P_R Tr{A e^{L_R tau}[rho_R(t) O]}
//   qrt:       regression approximation a . <E_R(tau)> <q_R(t)>
//   deviation: exact - qrt, computed independently from the covariance
//              <E_R q_R> - <E_R><q_R> and cross-checked against the
//              difference of the two channels at 1e-12.
struct CorrelationGrid {
  double t = 0.0;
  std::vector<double> tau;
  std::vector<Complex> exact;
  std::vector<Complex> qrt;
  std::vector<Complex> deviation;
};

CorrelationGrid two_time_grid(const TlsModel& model, const Mat& op_o,
                              const Mat& op_a, const Mat& rho0, double t,
                              const std::vector<double>& tau_grid);

// Three-operator correlations <O1(t) A(t+tau) O2(t)>, evaluated per member as
// Tr{A e^{L_R tau}[O2 rho_R(t) O1]}.  two_time_grid(O, A) equals
// three_op_grid(O1 = O, O2 = id, A).
CorrelationGrid three_op_grid(const TlsModel& model, const Mat& o1,
                              const Mat& o2, const Mat& op_a, const Mat& rho0,
                              double t, const std::vector<double>& tau_grid);

// Fluctuation split of the deviation: the total deviation F minus the part
// explained by single-time fluctuations,
//   delta_f(tau) = F(t,tau) - <O(t)> . a^T [<E_R(tau) x_R(t)> - <E><x>],
// cross-checked against the algebraically identical form
//   exact_fluct - a^T <E> (<q> - <O(t)> <x>).
struct FluctuationGrid {
  CorrelationGrid corr;
  std::vector<Complex> exact_fluct;  // exact - <O(t)> <A(t+tau)>
  std::vector<Complex> delta_f;
};

FluctuationGrid fluctuation_grid(const TlsModel& model, const Mat& op_o,
                                 const Mat& op_a, const Mat& rho0, double t,
                                 const std::vector<double>& tau_grid);

// Stationary (infinite waiting time, infinite lag) coherent components:
//   exact: sum_R P_R Tr{O rho_R^inf} Tr{A rho_R^inf}
//   qrt:   (sum_R P_R Tr{O rho_R^inf}) (sum_R P_R Tr{A rho_R^inf})
// For O = A^dag these are second and first moments of the same random
// variable, so exact >= qrt.
struct CoherentComponent {
  Complex exact;
  Complex qrt;
};

CoherentComponent coherent_component(const TlsModel& model, const Mat& op_o,
                                     const Mat& op_a);

// Unique stationary state of member i (kernel of its generator, normalized to
// unit trace).  Throws Error when the kernel is not one-dimensional, naming
// the member.
Mat member_stationary_state(const TlsModel& model, const HermitianBasis& basis,
                            int i);

std::vector<Mat> stationary_states(const TlsModel& model,
                                   const HermitianBasis& basis);

}  // namespace qrtsim
