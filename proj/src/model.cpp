#include "qrtsim/model.hpp"

#include <cmath>

namespace qrtsim {

double TlsModel::dressed_rate(int i) const {
  return ensemble.rates.at(i) * (1.0 + 2.0 * n_th);
}

double TlsModel::phi_rate(int i) const {
  return 0.5 * dressed_rate(i) + gamma_phi;
}

std::vector<double> TlsModel::dressed_rates() const {
  std::vector<double> out(ensemble.rates.size());
  for (int i = 0; i < size(); ++i) out[i] = dressed_rate(i);
  return out;
}

std::vector<double> TlsModel::phi_rates() const {
  std::vector<double> out(ensemble.rates.size());
  for (int i = 0; i < size(); ++i) out[i] = phi_rate(i);
  return out;
}

RateEnsemble TlsModel::dressed_ensemble() const {
  RateEnsemble e;
  e.rates = dressed_rates();
  e.weights = ensemble.weights;
  e.alpha = ensemble.alpha;
  return e;
}

RateEnsemble TlsModel::phi_ensemble() const {
  RateEnsemble e;
  e.rates = phi_rates();
  e.weights = ensemble.weights;
  e.alpha = ensemble.alpha;
  return e;
}

double TlsModel::gamma_mean() const {
  return ensemble_stats(dressed_ensemble()).mean;
}

double TlsModel::pi_plus() const { return n_th / (1.0 + 2.0 * n_th); }

double TlsModel::pi_minus() const {
  return (1.0 + n_th) / (1.0 + 2.0 * n_th);
}

double TlsModel::sz_inf() const { return -1.0 / (1.0 + 2.0 * n_th); }

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat sigma_minus() {
  Mat m = Mat::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Mat sigma_plus() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Mat operator_by_name(const std::string& name) {
  if (name == "sx") return pauli_x();
  if (name == "sy") return pauli_y();
  if (name == "sz") return pauli_z();
  if (name == "sp") return sigma_plus();
  if (name == "sm") return sigma_minus();
  if (name == "id") return Mat::Identity(2, 2);
  throw ValidationError("unknown operator name '" + name +
                        "' (expected sx, sy, sz, sp, sm or id)");
}

Mat bloch_state(double sx, double sy, double sz) {
  const double norm = std::sqrt(sx * sx + sy * sy + sz * sz);
  if (norm > 1.0 + 1e-12) {
    throw ValidationError("Bloch vector length " + std::to_string(norm) +
                          " exceeds 1");
  }
  return 0.5 * (Mat::Identity(2, 2) + sx * pauli_x() + sy * pauli_y() +
                sz * pauli_z());
}

Eigen::Vector3d bloch_of_state(const Mat& rho) {
  return Eigen::Vector3d((pauli_x() * rho).trace().real(),
                         (pauli_y() * rho).trace().real(),
                         (pauli_z() * rho).trace().real());
}

Superoperator thermal_dissipator(const HermitianBasis& basis, double n_th) {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.0 + n_th;
  a(1, 1) = n_th;
  return lindblad_superop(basis, a, {sigma_minus(), sigma_plus()});
}

Superoperator dephasing_dissipator(const HermitianBasis& basis) {
  Mat a = Mat::Identity(1, 1);
  return lindblad_superop(basis, a, {pauli_z()});
}

Superoperator member_dissipator(const TlsModel& model,
                                const HermitianBasis& basis, int i) {
  Superoperator d = thermal_dissipator(basis, model.n_th);
  d.m *= model.ensemble.rates.at(i);
  if (model.gamma_phi != 0.0) {
    Superoperator phi = dephasing_dissipator(basis);
    d.m += 0.5 * model.gamma_phi * phi.m;
  }
  return d;
}

Superoperator member_liouvillian(const TlsModel& model,
                                 const HermitianBasis& basis, int i) {
  Superoperator l = member_dissipator(model, basis, i);
  if (model.omega != 0.0) {
    Superoperator h = commutator_superop(basis, 0.5 * model.omega * pauli_x());
    l.m += h.m;
  }
  return l;
}

std::vector<Superoperator> build_liouvillians(const TlsModel& model,
                                              const HermitianBasis& basis) {
  std::vector<Superoperator> out;
  out.reserve(model.size());
  for (int i = 0; i < model.size(); ++i) {
    out.push_back(member_liouvillian(model, basis, i));
  }
  return out;
}

}  // namespace qrtsim
