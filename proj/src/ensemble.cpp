#include "qrtsim/ensemble.hpp"

#include <cmath>
#include <sstream>

namespace qrtsim {

RateEnsemble make_ensemble(std::vector<double> rates,
                           std::vector<double> weights) {
  if (rates.empty() || rates.size() != weights.size()) {
    throw ValidationError(
        "rate and weight lists must be non-empty and equal length");
  }
  for (double r : rates) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw ValidationError("rates must be finite and >= 0");
    }
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("weights must be finite and > 0");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "weights must sum to 1 within 1e-6 (got " << sum << ")";
    throw ValidationError(msg.str());
  }

  RateEnsemble out;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const double w = weights[i] / sum;
    bool merged = false;
    for (std::size_t j = 0; j < out.rates.size(); ++j) {
      const double scale = std::max(1.0, std::abs(out.rates[j]));
      if (std::abs(rates[i] - out.rates[j]) <= 1e-12 * scale) {
        out.weights[j] += w;
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.rates.push_back(rates[i]);
      out.weights.push_back(w);
    }
  }
  return out;
}

RateEnsemble exponential_ensemble(double gamma0, double b, double a, int n) {
  if (!(gamma0 > 0.0)) throw ValidationError("gamma0 must be > 0");
  if (!(b > 0.0)) throw ValidationError("decay parameter b must be > 0");
  if (!(a > 0.0)) throw ValidationError("weight parameter a must be > 0");
  if (n < 1) throw ValidationError("member count must be >= 1");

  std::vector<double> rates(n), weights(n);
  const double norm = (1.0 - std::exp(-a)) / (1.0 - std::exp(-a * n));
  for (int r = 0; r < n; ++r) {
    rates[r] = gamma0 * std::exp(-b * r);
    weights[r] = norm * std::exp(-a * r);
  }
  RateEnsemble out = make_ensemble(std::move(rates), std::move(weights));
  out.alpha = a / b;
  return out;
}

EnsembleStats ensemble_stats(const RateEnsemble& e) {
  EnsembleStats s;
  s.mean = ensemble_mean(e, [](double g) { return g; });
  const double m2 = ensemble_mean(e, [](double g) { return g * g; });
  s.variance = std::max(0.0, m2 - s.mean * s.mean);
  s.beta = (s.variance > 0.0 && s.mean > 0.0) ? s.variance / s.mean : 0.0;
  return s;
}

}  // namespace qrtsim
