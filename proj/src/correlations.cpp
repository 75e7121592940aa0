#include "qrtsim/correlations.hpp"

#include <cmath>
#include <sstream>

namespace qrtsim {

namespace {

void validate_observable(const Mat& op, const char* which) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw ValidationError(std::string(which) +
                          " operator must be 2x2 for the two-level model");
  }
}

void validate_lag_grid(const std::vector<double>& tau_grid) {
  if (tau_grid.empty()) throw ValidationError("lag grid must be non-empty");
  double prev = -1.0;
  for (double tau : tau_grid) {
    if (!std::isfinite(tau) || tau < 0.0) {
      throw ValidationError("lag grid entries must be finite and >= 0");
    }
    if (tau <= prev) throw ValidationError("lag grid must be strictly increasing");
    prev = tau;
  }
}

struct CorrelationWorkspace {
  HermitianBasis basis{2};
  std::vector<PropagatorCache> caches;
  std::vector<double> weights;
  std::vector<CVec> q;       // coords(O2 rho_R(t) O1) per member
  std::vector<CVec> x;       // coords(rho_R(t)) per member
  CVec a;                    // coords of the late-time observable

  CorrelationWorkspace(const TlsModel& model, const Mat& o1, const Mat& o2,
                       const Mat& op_a, const Mat& rho0, double t) {
    validate_observable(o1, "early-time");
    validate_observable(o2, "early-time");
    validate_observable(op_a, "late-time");
    validate_density(rho0);
    if (!std::isfinite(t) || t < 0.0) {
      throw ValidationError("waiting time must be finite and >= 0");
    }
    weights = model.ensemble.weights;
    const CVec x0 = basis.coords(rho0);
    for (const Superoperator& l : build_liouvillians(model, basis)) {
      caches.emplace_back(l);
    }
    for (int i = 0; i < model.size(); ++i) {
      const Mat rho_t = basis.from_coords(caches[i].at(t) * x0);
      q.push_back(basis.coords(o2 * rho_t * o1));
      x.push_back(basis.coords(rho_t));
    }
    a = basis.coords(op_a);
  }
};

CorrelationGrid correlate(const CorrelationWorkspace& ws, double t,
                          const std::vector<double>& tau_grid) {
  validate_lag_grid(tau_grid);
  const int nm = static_cast<int>(ws.weights.size());
  const int nb = ws.basis.size();
  CorrelationGrid grid;
  grid.t = t;
  grid.tau = tau_grid;
  grid.exact.reserve(tau_grid.size());
  grid.qrt.reserve(tau_grid.size());
  grid.deviation.reserve(tau_grid.size());
  CVec qbar = CVec::Zero(nb);
  for (int i = 0; i < nm; ++i) qbar += ws.weights[i] * ws.q[i];
  for (double tau : tau_grid) {
    Mat ebar = Mat::Zero(nb, nb);
    CVec eq = CVec::Zero(nb);  // <E_R(tau) q_R(t)>
    Complex exact(0, 0);
    for (int i = 0; i < nm; ++i) {
      const Mat e = ws.caches[i].at(tau);
      const CVec v = e * ws.q[i];
      exact += ws.weights[i] * trace_pairing(ws.a, v);
      ebar += ws.weights[i] * e;
      eq += ws.weights[i] * v;
    }
    const Complex qrt = trace_pairing(ws.a, ebar * qbar);
    const Complex dev = trace_pairing(ws.a, eq - ebar * qbar);
    const double tol = 1e-12 * std::max(1.0, std::abs(exact));
    if (std::abs(dev - (exact - qrt)) > tol) {
      std::ostringstream msg;
      msg << "internal consistency failure: covariance deviation "
          << std::abs(dev - (exact - qrt)) << " apart from exact - qrt at tau "
          << tau;
      throw Error(msg.str());
    }
    grid.exact.push_back(exact);
    grid.qrt.push_back(qrt);
    grid.deviation.push_back(dev);
  }
  return grid;
}

}  // namespace

CorrelationGrid two_time_grid(const TlsModel& model, const Mat& op_o,
                              const Mat& op_a, const Mat& rho0, double t,
                              const std::vector<double>& tau_grid) {
  CorrelationWorkspace ws(model, op_o, Mat::Identity(2, 2), op_a, rho0, t);
  return correlate(ws, t, tau_grid);
}

CorrelationGrid three_op_grid(const TlsModel& model, const Mat& o1,
                              const Mat& o2, const Mat& op_a, const Mat& rho0,
                              double t, const std::vector<double>& tau_grid) {
  CorrelationWorkspace ws(model, o1, o2, op_a, rho0, t);
  return correlate(ws, t, tau_grid);
}

FluctuationGrid fluctuation_grid(const TlsModel& model, const Mat& op_o,
                                 const Mat& op_a, const Mat& rho0, double t,
                                 const std::vector<double>& tau_grid) {
  CorrelationWorkspace ws(model, op_o, Mat::Identity(2, 2), op_a, rho0, t);
  FluctuationGrid out;
  out.corr = correlate(ws, t, tau_grid);

  const int nm = static_cast<int>(ws.weights.size());
  const int nb = ws.basis.size();
  const CVec ao = ws.basis.coords(op_o);
  CVec xbar = CVec::Zero(nb);
  CVec qbar = CVec::Zero(nb);
  for (int i = 0; i < nm; ++i) {
    xbar += ws.weights[i] * ws.x[i];
    qbar += ws.weights[i] * ws.q[i];
  }
  const Complex obar = trace_pairing(ao, xbar);  // <O(t)>

  for (std::size_t j = 0; j < tau_grid.size(); ++j) {
    const double tau = tau_grid[j];
    Mat ebar = Mat::Zero(nb, nb);
    CVec ex = CVec::Zero(nb);  // <E_R(tau) x_R(t)>
    for (int i = 0; i < nm; ++i) {
      const Mat e = ws.caches[i].at(tau);
      ebar += ws.weights[i] * e;
      ex += ws.weights[i] * (e * ws.x[i]);
    }
    const Complex abar_exact = trace_pairing(ws.a, ex);
    const Complex abar_qrt = trace_pairing(ws.a, ebar * xbar);
    const Complex exact_fluct = out.corr.exact[j] - obar * abar_exact;
    const Complex delta_f =
        out.corr.deviation[j] - obar * (abar_exact - abar_qrt);
    // same quantity assembled the other way round
    const Complex check =
        exact_fluct - trace_pairing(ws.a, ebar * (qbar - obar * xbar));
    const double tol = 1e-12 * std::max(1.0, std::abs(out.corr.exact[j]));
    if (std::abs(delta_f - check) > tol) {
      std::ostringstream msg;
      msg << "internal consistency failure: fluctuation deviation "
          << std::abs(delta_f - check) << " apart from cross-check at tau "
          << tau;
      throw Error(msg.str());
    }
    out.exact_fluct.push_back(exact_fluct);
    out.delta_f.push_back(delta_f);
  }
  return out;
}

Mat member_stationary_state(const TlsModel& model, const HermitianBasis& basis,
                            int i) {
  const Superoperator l = member_liouvillian(model, basis, i);
  const int n = basis.size();
  Eigen::FullPivLU<Mat> rank_check(l.m);
  rank_check.setThreshold(1e-10);
  if (n - rank_check.rank() != 1) {
    std::ostringstream msg;
    msg << "stationary state of member " << i
        << " is degenerate (generator kernel dimension "
        << (n - rank_check.rank()) << ")";
    throw Error(msg.str());
  }
  // trace preservation makes the identity row vanish; replacing it with the
  // unit-trace constraint picks the physical kernel vector
  Mat a = l.m;
  a.row(0).setZero();
  a(0, 0) = 1.0;
  CVec rhs = CVec::Zero(n);
  rhs(0) = 1.0 / std::sqrt(double(basis.dim()));
  const CVec x = a.fullPivLu().solve(rhs);
  const double residual = (l.m * x).cwiseAbs().maxCoeff();
  if (residual > 1e-10 * std::max(1.0, superop_norm(l))) {
    std::ostringstream msg;
    msg << "stationary state of member " << i << " has generator residual "
        << residual;
    throw Error(msg.str());
  }
  const Mat rho = basis.from_coords(x);
  return 0.5 * (rho + rho.adjoint());
}

std::vector<Mat> stationary_states(const TlsModel& model,
                                   const HermitianBasis& basis) {
  std::vector<Mat> out;
  out.reserve(model.size());
  for (int i = 0; i < model.size(); ++i) {
    out.push_back(member_stationary_state(model, basis, i));
  }
  return out;
}

CoherentComponent coherent_component(const TlsModel& model, const Mat& op_o,
                                     const Mat& op_a) {
  validate_observable(op_o, "early-time");
  validate_observable(op_a, "late-time");
  HermitianBasis basis(2);
  CoherentComponent out{Complex(0, 0), Complex(0, 0)};
  Complex mean_o(0, 0), mean_a(0, 0);
  for (int i = 0; i < model.size(); ++i) {
    const Mat rho = member_stationary_state(model, basis, i);
    const Complex o = (op_o * rho).trace();
    const Complex a = (op_a * rho).trace();
    const double w = model.ensemble.weights[i];
    out.exact += w * o * a;
    mean_o += w * o;
    mean_a += w * a;
  }
  out.qrt = mean_o * mean_a;
  return out;
}

}  // namespace qrtsim
