#pragma once

#include <optional>
#include <vector>

#include "qrtsim/types.hpp"

namespace qrtsim {

// Discrete distribution of bare relaxation rates: members R carry rate
// gamma'_R >= 0 with probability P_R > 0, sum_R P_R = 1.
struct RateEnsemble {
  std::vector<double> rates;
  std::vector<double> weights;
  // Shape parameter a/b of an exponentially generated ensemble, when known;
  // controls the intermediate-time power-law decay exponent.
  std::optional<double> alpha;
};

struct EnsembleStats {
  double mean = 0.0;       // <gamma>
  double beta = 0.0;       // Var(gamma) / <gamma>, 0 when variance vanishes
  double variance = 0.0;   // Var(gamma)
};

// Validates and normalizes a rate distribution.  Weight sums off by more than
// 1e-6 are rejected; smaller deviations are renormalized exactly.  Rates that
// coincide within relative tolerance 1e-12 are merged (weights added), which
// leaves every ensemble average unchanged.
RateEnsemble make_ensemble(std::vector<double> rates,
                           std::vector<double> weights);

// Geometric family: rates gamma0 * exp(-b R), weights proportional to
// exp(-a R), R = 0..n-1 (normalized over the finite range).
// All of gamma0, b, a must be positive and n >= 1.
RateEnsemble exponential_ensemble(double gamma0, double b, double a, int n);

EnsembleStats ensemble_stats(const RateEnsemble& e);

// Weighted average of an arbitrary per-rate function.
template <typename F>
double ensemble_mean(const RateEnsemble& e, F&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < e.rates.size(); ++i) {
    acc += e.weights[i] * f(e.rates[i]);
  }
  return acc;
}

}  // namespace qrtsim
