#include "qrtsim/analytic.hpp"

#include <cmath>
#include <sstream>

#include "qrtsim/kernel.hpp"
#include "qrtsim/volterra.hpp"

namespace qrtsim {

namespace {

void require_free_decay(const TlsModel& model, const char* what) {
  if (model.omega != 0.0) {
    throw ValidationError(std::string(what) +
                          " requires an undriven model (omega = 0)");
  }
}

void check_finite(Complex v, const char* label, Complex u) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream msg;
    msg << label << " kernel hit a pole at u = (" << u.real() << ", "
        << u.imag() << ")";
    throw KernelError(msg.str());
  }
}

}  // namespace

double survival_population(const RateEnsemble& dressed, double t) {
  return ensemble_mean(dressed, [t](double g) { return std::exp(-g * t); });
}

double survival_coherence(const RateEnsemble& dressed, double gamma_phi,
                          double t) {
  return std::exp(-gamma_phi * t) *
         ensemble_mean(dressed,
                       [t](double g) { return std::exp(-0.5 * g * t); });
}

double sz_of_t(const TlsModel& model, double sz0, double t) {
  return model.sz_inf() +
         survival_population(model.dressed_ensemble(), t) *
             (sz0 - model.sz_inf());
}

Complex kernel_population_value(const RateEnsemble& dressed, Complex u) {
  Complex num(0, 0), den(0, 0);
  for (std::size_t i = 0; i < dressed.rates.size(); ++i) {
    num += dressed.weights[i] * dressed.rates[i] / (u + dressed.rates[i]);
    den += dressed.weights[i] / (u + dressed.rates[i]);
  }
  const Complex k = num / den;
  check_finite(k, "population", u);
  return k;
}

Complex kernel_coherence_value(const RateEnsemble& dressed, double gamma_phi,
                               Complex u) {
  Complex num(0, 0), den(0, 0);
  for (std::size_t i = 0; i < dressed.rates.size(); ++i) {
    const double g = 0.5 * dressed.rates[i] + gamma_phi;
    num += dressed.weights[i] * g / (u + g);
    den += dressed.weights[i] / (u + g);
  }
  const Complex k = num / den;
  check_finite(k, "coherence", u);
  return k;
}

DrivenKernelValues driven_kernel_values(const RateEnsemble& dressed,
                                        double gamma_phi, double omega,
                                        Complex u) {
  const double w2 = omega * omega;
  Complex t0(0, 0), t1(0, 0), t2(0, 0);
  for (std::size_t i = 0; i < dressed.rates.size(); ++i) {
    const double g = dressed.rates[i];
    const Complex t =
        0.5 / ((u + g) * (u + 0.5 * g + gamma_phi) + w2);
    t0 += dressed.weights[i] * t;
    t1 += dressed.weights[i] * g * t;
    t2 += dressed.weights[i] * g * g * t;
  }
  DrivenKernelValues v;
  v.b_mean = t1 / t0;
  v.c_mean = (t1 == Complex(0, 0)) ? Complex(0, 0) : t2 / t1;
  v.d_factor = (0.5 * v.b_mean) /
               ((u + v.b_mean) * (u + 0.5 * v.b_mean + gamma_phi) + w2);
  v.gamma_x = kernel_coherence_value(dressed, gamma_phi, u);
  v.gamma_y = v.d_factor * ((u + v.c_mean) * (0.5 * v.b_mean + u + gamma_phi) +
                            w2) +
              gamma_phi;
  v.gamma_z =
      2.0 * v.d_factor * ((u + v.b_mean) * (0.5 * v.c_mean + u + gamma_phi) +
                          w2);
  v.upsilon = v.d_factor * (v.c_mean - v.b_mean) * omega;
  check_finite(v.gamma_y, "transverse-y", u);
  check_finite(v.gamma_z, "longitudinal", u);
  check_finite(v.upsilon, "cross-coupling", u);
  return v;
}

Superoperator lindblad_u_free(const TlsModel& model,
                              const HermitianBasis& basis, Complex u) {
  require_free_decay(model, "free-decay frequency-domain generator");
  const RateEnsemble dressed = model.dressed_ensemble();
  const Complex k = kernel_population_value(dressed, u);
  const Complex kphi =
      kernel_coherence_value(dressed, model.gamma_phi, u) - 0.5 * k;
  Superoperator out = thermal_dissipator(basis, model.n_th);
  out.m *= k / (1.0 + 2.0 * model.n_th);
  out.m += 0.5 * kphi * dephasing_dissipator(basis).m;
  return out;
}

LindbladUParts lindblad_u_parts(const TlsModel& model, Complex u) {
  const DrivenKernelValues v = driven_kernel_values(
      model.dressed_ensemble(), model.gamma_phi, model.omega, u);
  LindbladUParts parts;
  parts.upsilon = v.upsilon;
  const double stretch = 1.0 + 2.0 * model.n_th;
  const Complex i_quarter = Complex(0.0, 0.25) / stretch;
  Mat a = Mat::Zero(3, 3);
  a(0, 0) = model.pi_minus() * v.gamma_z;
  a(1, 1) = model.pi_plus() * v.gamma_z;
  a(2, 2) = 0.25 * (v.gamma_x + v.gamma_y - v.gamma_z);
  a(0, 1) = a(1, 0) = -0.5 * (v.gamma_x - v.gamma_y);
  a(0, 2) = a(1, 2) = -i_quarter * v.upsilon;
  a(2, 0) = a(2, 1) = i_quarter * v.upsilon;
  parts.a = a;
  return parts;
}

Superoperator assemble_lindblad_u(const TlsModel& model,
                                  const HermitianBasis& basis, Complex u) {
  const LindbladUParts parts = lindblad_u_parts(model, u);
  Superoperator out = lindblad_superop_unchecked(
      basis, parts.a, {sigma_minus(), sigma_plus(), pauli_z()});
  const Superoperator drive = commutator_superop(basis, pauli_x());
  out.m += (0.5 * parts.upsilon) * drive.m;
  return out;
}

Mat driven_member_stationary(const TlsModel& model, int i) {
  const double g = model.dressed_rate(i);
  const double gphi = model.phi_rate(i);
  const double w = model.omega;
  const double stretch = 1.0 + 2.0 * model.n_th;
  const double denom = stretch * (g * gphi + w * w);
  if (denom == 0.0) {
    throw Error("stationary state of member " + std::to_string(i) +
                " is degenerate (vanishing relaxation)");
  }
  const double sy = w * g / denom;
  const double sz = -g * gphi / denom;
  return 0.5 * (Mat::Identity(2, 2) + sy * pauli_y() + sz * pauli_z());
}

Mat ensemble_stationary_gamma_form(const TlsModel& model) {
  const DrivenKernelValues v = driven_kernel_values(
      model.dressed_ensemble(), model.gamma_phi, model.omega, Complex(0, 0));
  const double gy = v.gamma_y.real();
  const double gz = v.gamma_z.real();
  const double y = v.upsilon.real();
  const double w = model.omega;
  const double stretch = 1.0 + 2.0 * model.n_th;
  const double denom = stretch * (gy * gz + (y + w) * (y + w));
  if (denom == 0.0) {
    throw Error("ensemble stationary state is degenerate");
  }
  const double sy = w * gz / denom;
  const double sz = -(gy * gz + y * (y + w)) / denom;
  return 0.5 * (Mat::Identity(2, 2) + sy * pauli_y() + sz * pauli_z());
}

DeviationFunctions deviation_functions(const TlsModel& model, double t,
                                       double tau) {
  require_free_decay(model, "deviation function");
  const RateEnsemble dressed = model.dressed_ensemble();
  const double gphi = model.gamma_phi;
  DeviationFunctions f;
  f.f0 = std::exp(-gphi * tau) * survival_population(dressed, t + 0.5 * tau) -
         survival_population(dressed, t) *
             survival_coherence(dressed, gphi, tau);
  f.f_phi = survival_coherence(dressed, gphi, t + tau) -
            survival_coherence(dressed, gphi, t) *
                survival_coherence(dressed, gphi, tau);
  f.f_pi = survival_population(dressed, t + tau) -
           survival_population(dressed, t) * survival_population(dressed, tau);
  return f;
}

Eigen::Vector4cd deviation_vector_closed_form(const TlsModel& model,
                                              const Mat& op_o, const Mat& rho0,
                                              double t, double tau) {
  require_free_decay(model, "closed-form deviation vector");
  validate_density(rho0);
  const Mat sz = pauli_z();
  const Mat rho_plus = 0.5 * (rho0 + sz * rho0 * sz);
  const Mat rho_minus = 0.5 * (rho0 - sz * rho0 * sz);
  const Mat rho_inf =
      0.5 * (Mat::Identity(2, 2) + model.sz_inf() * sz);

  const DeviationFunctions f = deviation_functions(model, t, tau);
  const DeviationFunctions f_swapped = deviation_functions(model, tau, t);
  const double gpi[4] = {f.f0, f.f0, f.f_pi, 0.0};
  const double gphi[4] = {f.f_phi, f.f_phi, f_swapped.f0, 0.0};

  const Mat shifted[4] = {pauli_x(), pauli_y(),
                          sz - model.sz_inf() * Mat::Identity(2, 2),
                          Mat::Identity(2, 2)};
  Eigen::Vector4cd out;
  for (int mu = 0; mu < 4; ++mu) {
    const Complex fpi = (op_o * shifted[mu] * (rho_plus - rho_inf)).trace();
    const Complex fphi = (op_o * shifted[mu] * rho_minus).trace();
    out(mu) = gpi[mu] * fpi + gphi[mu] * fphi;
  }
  return out;
}

Complex cxy_closed_form(const TlsModel& model, double sz0, double t,
                        double tau) {
  require_free_decay(model, "transverse-longitudinal closed form");
  const RateEnsemble dressed = model.dressed_ensemble();
  const DeviationFunctions f = deviation_functions(model, t, tau);
  const double val =
      survival_coherence(dressed, model.gamma_phi, tau) *
          sz_of_t(model, sz0, t) +
      f.f0 * (sz0 - model.sz_inf());
  return Complex(0.0, val);
}

MasterComparison master_approximation(const TlsModel& model, const Mat& rho0,
                                      const std::vector<double>& tgrid) {
  require_free_decay(model, "memory-kernel master propagation");
  HermitianBasis basis(2);
  const double stretch = 1.0 + 2.0 * model.n_th;

  VolterraProblem problem;
  const int n = basis.size();
  problem.a0 = Mat::Zero(n, n);
  if (model.gamma_phi != 0.0) {
    problem.a0 = 0.5 * model.gamma_phi * dephasing_dissipator(basis).m;
  }
  problem.b0 = CVec::Zero(n);
  MemoryChannel ch;
  ch.kernel = invert_rational_kernel(model.dressed_ensemble(),
                                     KernelKind::population, model.gamma_phi);
  ch.b = thermal_dissipator(basis, model.n_th).m / stretch;
  ch.c = CVec::Zero(n);
  problem.channels.push_back(ch);

  const VolterraResult r =
      volterra_evolve(problem, basis.coords(rho0), tgrid, /*strict=*/false);

  MasterComparison cmp;
  cmp.master.t = tgrid;
  for (const CVec& x : r.x) cmp.master.states.push_back(basis.from_coords(x));
  cmp.exact = ensemble_density(model, rho0, tgrid);
  for (std::size_t i = 0; i < tgrid.size(); ++i) {
    cmp.sup_gap = std::max(
        cmp.sup_gap,
        (cmp.master.states[i] - cmp.exact.states[i]).cwiseAbs().maxCoeff());
  }
  return cmp;
}

IntensityAsymptotics intensity_asymptotics(const TlsModel& model) {
  const double stretch = 1.0 + 2.0 * model.n_th;
  double tau_mean = 0.0, tau_sq = 0.0, g_mean = 0.0, g_sq = 0.0;
  for (int i = 0; i < model.size(); ++i) {
    const double w = model.ensemble.weights[i];
    const double tau_phi = 1.0 / model.phi_rate(i);
    const double g = model.dressed_rate(i);
    tau_mean += w * tau_phi;
    tau_sq += w * tau_phi * tau_phi;
    g_mean += w * g;
    g_sq += w * g * g;
  }
  IntensityAsymptotics a;
  const double w2 = model.omega * model.omega;
  a.low = w2 * std::max(0.0, tau_sq - tau_mean * tau_mean) /
          (stretch * stretch);
  a.high = (w2 > 0.0) ? std::max(0.0, g_sq - g_mean * g_mean) /
                            (w2 * stretch * stretch)
                      : 0.0;
  return a;
}

double power_law_slope(const RateEnsemble& dressed) {
  const auto p = [&](double t) { return survival_population(dressed, t); };
  double g_min = dressed.rates[0], g_max = dressed.rates[0];
  for (double g : dressed.rates) {
    g_min = std::min(g_min, g);
    g_max = std::max(g_max, g);
  }
  if (!(g_min > 0.0)) {
    throw ValidationError(
        "power-law window undefined: survival does not reach 0.05 with a "
        "zero-rate member");
  }
  const auto crossing = [&](double level) {
    double lo = 1e-12 / g_max, hi = 1e3 / g_min;
    for (int it = 0; it < 200; ++it) {
      const double mid = std::sqrt(lo * hi);
      if (p(mid) > level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::sqrt(lo * hi);
  };
  const double t_lo = crossing(0.5);
  const double t_hi = crossing(0.05);

  const int samples = 200;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    const double t =
        t_lo * std::pow(t_hi / t_lo, double(i) / double(samples - 1));
    const double lx = std::log(t);
    const double ly = std::log(p(t));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
}

}  // namespace qrtsim
