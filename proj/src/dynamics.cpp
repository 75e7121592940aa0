#include "qrtsim/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace qrtsim {

namespace {

Complex nearest_member_pole(const std::vector<Superoperator>& ls, Complex u) {
  Complex best(0, 0);
  double dist = -1.0;
  for (const Superoperator& l : ls) {
    Eigen::ComplexEigenSolver<Mat> es(l.m, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double d = std::abs(es.eigenvalues()(i) - u);
      if (dist < 0.0 || d < dist) {
        dist = d;
        best = es.eigenvalues()(i);
      }
    }
  }
  return best;
}

}  // namespace

void validate_density(const Mat& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) {
    throw ValidationError("density matrix must be square, dimension >= 2");
  }
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("density matrix must be Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-12) {
    std::ostringstream msg;
    msg << "density matrix trace must be 1 (got " << rho.trace().real() << ")";
    throw ValidationError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()));
  if (es.eigenvalues().minCoeff() < -1e-10) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue "
        << es.eigenvalues().minCoeff();
    throw ValidationError(msg.str());
  }
}

void validate_time_grid(const std::vector<double>& tgrid) {
  if (tgrid.empty()) throw ValidationError("time grid must be non-empty");
  double prev = -1.0;
  for (double t : tgrid) {
    if (!std::isfinite(t) || t < 0.0) {
      throw ValidationError("time grid entries must be finite and >= 0");
    }
    if (t <= prev) {
      throw ValidationError("time grid must be strictly increasing");
    }
    prev = t;
  }
}

Trajectory propagate_member(const Superoperator& l, const Mat& rho0,
                            const std::vector<double>& tgrid) {
  validate_density(rho0);
  validate_time_grid(tgrid);
  HermitianBasis basis(l.dim);
  PropagatorCache cache(l);
  const CVec x0 = basis.coords(rho0);
  Trajectory out;
  out.t = tgrid;
  out.states.reserve(tgrid.size());
  for (double t : tgrid) {
    if (t == 0.0) {
      out.states.push_back(rho0);
    } else {
      out.states.push_back(basis.from_coords(cache.at(t) * x0));
    }
  }
  return out;
}

Trajectory ensemble_density(const TlsModel& model, const Mat& rho0,
                            const std::vector<double>& tgrid) {
  validate_density(rho0);
  validate_time_grid(tgrid);
  HermitianBasis basis(2);
  const CVec x0 = basis.coords(rho0);
  std::vector<PropagatorCache> caches;
  caches.reserve(model.size());
  for (const Superoperator& l : build_liouvillians(model, basis)) {
    caches.emplace_back(l);
  }
  Trajectory out;
  out.t = tgrid;
  out.states.reserve(tgrid.size());
  for (double t : tgrid) {
    if (t == 0.0) {
      out.states.push_back(rho0);
      continue;
    }
    CVec x = CVec::Zero(basis.size());
    for (int i = 0; i < model.size(); ++i) {
      x += model.ensemble.weights[i] * (caches[i].at(t) * x0);
    }
    out.states.push_back(basis.from_coords(x));
  }
  return out;
}

std::vector<Mat> member_states_at(const TlsModel& model, const Mat& rho0,
                                  double t) {
  validate_density(rho0);
  if (!std::isfinite(t) || t < 0.0) {
    throw ValidationError("time must be finite and >= 0");
  }
  HermitianBasis basis(2);
  const CVec x0 = basis.coords(rho0);
  std::vector<Mat> out;
  out.reserve(model.size());
  for (int i = 0; i < model.size(); ++i) {
    const Superoperator l = member_liouvillian(model, basis, i);
    if (t == 0.0) {
      out.push_back(rho0);
    } else {
      out.push_back(basis.from_coords(expm_superop(l, t).m * x0));
    }
  }
  return out;
}

Superoperator averaged_propagator(const TlsModel& model, double tau) {
  if (!std::isfinite(tau) || tau < 0.0) {
    throw ValidationError("lag must be finite and >= 0");
  }
  HermitianBasis basis(2);
  Superoperator g{2, Mat::Zero(basis.size(), basis.size())};
  for (int i = 0; i < model.size(); ++i) {
    const Superoperator l = member_liouvillian(model, basis, i);
    g.m += model.ensemble.weights[i] * expm_superop(l, tau).m;
  }
  return g;
}

LaplaceGenerator laplace_generator(const TlsModel& model, Complex u) {
  HermitianBasis basis(2);
  const int n = basis.size();
  const std::vector<Superoperator> ls = build_liouvillians(model, basis);
  Mat gbar = Mat::Zero(n, n);
  Mat gm = Mat::Zero(n, n);  // <G_R (-L_R)>
  Mat gd = Mat::Zero(n, n);  // <G_R D_R>
  for (int i = 0; i < model.size(); ++i) {
    const Superoperator g = resolvent(ls[i], u);
    const Superoperator d = member_dissipator(model, basis, i);
    const double w = model.ensemble.weights[i];
    gbar += w * g.m;
    gm += w * (g.m * (-ls[i].m));
    gd += w * (g.m * d.m);
  }
  Eigen::FullPivLU<Mat> lu(gbar);
  if (!lu.isInvertible()) {
    std::ostringstream msg;
    msg << "averaged resolvent singular at u = (" << u.real() << ", "
        << u.imag() << ")";
    throw SingularityError(msg.str(), nearest_member_pole(ls, u));
  }
  LaplaceGenerator out;
  out.mhat = Superoperator{2, lu.solve(gm)};
  out.lu = Superoperator{2, lu.solve(gd)};
  return out;
}

StationarityProbe stationarity_time(const TlsModel& model, const Mat& rho0) {
  validate_density(rho0);
  HermitianBasis basis(2);
  const std::vector<Superoperator> ls = build_liouvillians(model, basis);
  std::vector<PropagatorCache> caches;
  for (const Superoperator& l : ls) caches.emplace_back(l);
  const CVec x0 = basis.coords(rho0);

  auto derivative_norm = [&](double t) {
    CVec dx = CVec::Zero(basis.size());
    for (int i = 0; i < model.size(); ++i) {
      dx += model.ensemble.weights[i] * (ls[i].m * (caches[i].at(t) * x0));
    }
    return basis.from_coords(dx).cwiseAbs().maxCoeff();
  };

  double fastest = std::max(model.gamma_phi, std::abs(model.omega));
  double slowest = 0.0;
  for (int i = 0; i < model.size(); ++i) {
    const double g = model.dressed_rate(i);
    fastest = std::max(fastest, g);
    if (g > 0.0 && (slowest == 0.0 || g < slowest)) slowest = g;
  }
  if (slowest == 0.0) slowest = fastest;

  StationarityProbe probe;
  probe.residual = derivative_norm(0.0);
  if (fastest == 0.0 || probe.residual < 1e-10) {
    probe.reached = probe.residual < 1e-10;
    return probe;
  }
  const double cap = 1e3 / slowest;
  for (double t = 0.01 / fastest;; t *= 2.0) {
    const bool last = t >= cap;
    if (last) t = cap;
    probe.time = t;
    probe.residual = derivative_norm(t);
    if (probe.residual < 1e-10) {
      probe.reached = true;
      return probe;
    }
    if (last) return probe;
  }
}

double semigroup_defect(const TlsModel& model, double t, double tau) {
  const Superoperator both = averaged_propagator(model, t + tau);
  const Superoperator first = averaged_propagator(model, t);
  const Superoperator second = averaged_propagator(model, tau);
  return (both.m - second.m * first.m).cwiseAbs().maxCoeff();
}

}  // namespace qrtsim
