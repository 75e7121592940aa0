#pragma once

#include <doctest.h>

#include <random>
#include <vector>

#include "qrtsim/basis.hpp"
#include "qrtsim/model.hpp"

namespace qrtsim::testing {

inline double maxabs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline double diff(const Mat& a, const Mat& b) { return maxabs(a - b); }

inline Mat random_operator(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(u(rng), u(rng));
  }
  return m;
}

inline Mat random_hermitian(std::mt19937& rng, int dim) {
  const Mat m = random_operator(rng, dim);
  return 0.5 * (m + m.adjoint());
}

inline Mat random_density(std::mt19937& rng, int dim) {
  const Mat m = random_operator(rng, dim);
  Mat rho = m * m.adjoint();
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * double(i) / double(n - 1);
  }
  return out;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
  }
  return out;
}

// five-member geometric ensemble used by the benchmark figures
inline TlsModel benchmark_model(double b, double omega_over_gamma,
                                double gamma_phi_over_gamma) {
  TlsModel model;
  model.ensemble = exponential_ensemble(1.0, b, 0.5 * b, 5);
  const double mean = model.gamma_mean();
  model.omega = omega_over_gamma * mean;
  model.gamma_phi = gamma_phi_over_gamma * mean;
  return model;
}

}  // namespace qrtsim::testing
