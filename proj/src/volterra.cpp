#include "qrtsim/volterra.hpp"

#include <cmath>
#include <sstream>

namespace qrtsim {

VolterraResult volterra_evolve(const VolterraProblem& problem, const CVec& x0,
                               const std::vector<double>& tgrid, bool strict) {
  const Eigen::Index n = x0.size();
  if (problem.a0.rows() != n || problem.a0.cols() != n) {
    throw ValidationError("drift matrix size mismatch with state");
  }
  if (problem.b0.size() != n) {
    throw ValidationError("drift offset size mismatch with state");
  }
  for (const MemoryChannel& ch : problem.channels) {
    if (ch.b.rows() != n || ch.b.cols() != n || ch.c.size() != n) {
      throw ValidationError("memory channel size mismatch with state");
    }
    if (ch.kernel.poles.size() != ch.kernel.residues.size()) {
      throw ValidationError("kernel poles and residues must pair up");
    }
  }
  if (tgrid.size() < 2) {
    throw ValidationError("time grid needs at least two points");
  }
  if (!(tgrid.front() == 0.0)) {
    throw ValidationError("time grid must start at 0");
  }
  const double h = tgrid[1] - tgrid[0];
  if (!(h > 0.0)) throw ValidationError("time grid must be increasing");
  for (std::size_t i = 1; i < tgrid.size(); ++i) {
    const double step = tgrid[i] - tgrid[i - 1];
    if (std::abs(step - h) > 1e-9 * h) {
      throw ValidationError("time grid must be uniform");
    }
  }

  // fold the instantaneous (delta) kernel parts into the local drift
  Mat a0 = problem.a0;
  CVec b0 = problem.b0;
  double max_pole = 0.0;
  Eigen::Index n_aux = 0;
  for (const MemoryChannel& ch : problem.channels) {
    a0 += ch.kernel.markov_weight * ch.b;
    b0 += ch.kernel.markov_weight * ch.c;
    max_pole = std::max(max_pole, ch.kernel.max_pole_abs());
    n_aux += static_cast<Eigen::Index>(ch.kernel.poles.size()) * n;
  }

  VolterraResult result;
  result.stability_product = h * max_pole;
  if (result.stability_product > 0.1) {
    if (strict) {
      std::ostringstream msg;
      msg << "step size " << h << " too large for stiffest memory pole "
          << max_pole << " (h*|p| = " << result.stability_product << " > 0.1)";
      throw StabilityError(msg.str());
    }
    result.step_warning = true;
  }

  // augmented state: [x; y_{m,k}] with dy_{m,k}/dt = p y + B_m x + c_m and
  // the memory force sum_{m,k} res_{m,k} y_{m,k}
  CVec z = CVec::Zero(n + n_aux);
  z.head(n) = x0;

  auto deriv = [&](const CVec& zz) {
    CVec dz(zz.size());
    const auto x = zz.head(n);
    CVec dx = a0 * x + b0;
    Eigen::Index off = n;
    for (const MemoryChannel& ch : problem.channels) {
      for (std::size_t k = 0; k < ch.kernel.poles.size(); ++k) {
        const auto y = zz.segment(off, n);
        dx += ch.kernel.residues[k] * y;
        dz.segment(off, n) = ch.kernel.poles[k] * y + ch.b * x + ch.c;
        off += n;
      }
    }
    dz.head(n) = dx;
    return dz;
  };

  result.t = tgrid;
  result.x.reserve(tgrid.size());
  result.x.push_back(x0);
  for (std::size_t i = 1; i < tgrid.size(); ++i) {
    const CVec k1 = deriv(z);
    const CVec k2 = deriv(z + 0.5 * h * k1);
    const CVec k3 = deriv(z + 0.5 * h * k2);
    const CVec k4 = deriv(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    result.x.push_back(z.head(n));
  }
  return result;
}

}  // namespace qrtsim
