#pragma once

#include <string>
#include <vector>

#include "qrtsim/correlations.hpp"
#include "qrtsim/model.hpp"

namespace qrtsim {

// Residuals of the three member-level (Markovian) detailed-balance
// conditions, each a max-abs matrix entry:
//   state_reversal:       time-reversed stationary state equals itself
//   hamiltonian_commutes: [H_eff, rho_inf] = 0
//   dissipator_reversal:  W D# = D~ W with W = left multiplication by rho_inf
struct MarkovianCheck {
  double state_reversal = 0.0;
  double hamiltonian_commutes = 0.0;
  double dissipator_reversal = 0.0;
};

MarkovianCheck markovian_db_check(const TlsModel& model,
                                  const HermitianBasis& basis, int i);

// Ensemble-level condition on the frequency-domain generator, checked at each
// sampled frequency: W (L_H# + L#(u)) = (L_H~ + L~(u)) W with W built from the
// ensemble stationary state.  Samples that collide with generator poles are
// skipped and reported.
struct NonMarkovianCheck {
  double state_reversal = 0.0;
  std::vector<Complex> u_samples;
  std::vector<double> superop_residual;
  std::vector<Complex> skipped;          // frequencies that hit a pole
  std::vector<Complex> skipped_nearest;  // nearest pole for each skip
};

NonMarkovianCheck nonmarkovian_db_check(const TlsModel& model,
                                        const std::vector<Complex>& u_samples);

// Covariance of the member stationary Bloch vectors: Xi_JK =
// <S_J S_K> - <S_J><S_K>, symmetric positive semidefinite; zero exactly when
// all members share one stationary state, which is when the regression
// approximation becomes exact at late times.
Eigen::Matrix3d stationary_dispersion(const TlsModel& model);

struct BalanceReport {
  std::vector<MarkovianCheck> members;
  NonMarkovianCheck ensemble;
  Eigen::Matrix3d dispersion;
  double dispersion_max_abs = 0.0;
  // QRT_ASYMPTOTICALLY_VALID when the dispersion vanishes below 1e-10,
  // QRT_VIOLATED otherwise; `marginal` marks the band (1e-10, 1e-6) where the
  // violation is too small to resolve reliably (reported, not passing).
  std::string verdict;
  bool marginal = false;
};

BalanceReport balance_report(const TlsModel& model,
                             const std::vector<Complex>& u_samples);

// JSON rendering with a fixed field order (deterministic output).  The note
// field records why finitely many frequency samples suffice: the generator is
// a rational function of u, so residuals that vanish on a set of samples
// exceeding its pole count vanish identically.
std::string balance_report_json(const TlsModel& model,
                                const BalanceReport& report);

}  // namespace qrtsim
