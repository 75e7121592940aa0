#include "qrtsim/balance.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace qrtsim {

namespace {

Mat reversed_state(const Mat& rho) { return rho.conjugate(); }

Superoperator effective_hamiltonian_superop(const TlsModel& model,
                                            const HermitianBasis& basis) {
  if (model.omega == 0.0) {
    return Superoperator{2, Mat::Zero(basis.size(), basis.size())};
  }
  return commutator_superop(basis, 0.5 * model.omega * pauli_x());
}

}  // namespace

MarkovianCheck markovian_db_check(const TlsModel& model,
                                  const HermitianBasis& basis, int i) {
  const Mat rho = member_stationary_state(model, basis, i);
  MarkovianCheck out;
  out.state_reversal = (reversed_state(rho) - rho).cwiseAbs().maxCoeff();
  const Mat h = 0.5 * model.omega * pauli_x();
  out.hamiltonian_commutes = (h * rho - rho * h).cwiseAbs().maxCoeff();

  const Superoperator w = lmul_superop(basis, rho);
  const Superoperator d = member_dissipator(model, basis, i);
  const Mat lhs = w.m * dual(d).m;
  const Mat rhs = time_reverse(basis, d).m * w.m;
  out.dissipator_reversal = (lhs - rhs).cwiseAbs().maxCoeff();
  return out;
}

NonMarkovianCheck nonmarkovian_db_check(
    const TlsModel& model, const std::vector<Complex>& u_samples) {
  HermitianBasis basis(2);
  const int n = basis.size();

  // ensemble stationary state
  Mat rho_s = Mat::Zero(2, 2);
  for (int i = 0; i < model.size(); ++i) {
    rho_s += model.ensemble.weights[i] *
             member_stationary_state(model, basis, i);
  }

  NonMarkovianCheck out;
  out.state_reversal = (reversed_state(rho_s) - rho_s).cwiseAbs().maxCoeff();

  const Superoperator w = lmul_superop(basis, rho_s);
  const Superoperator lh = effective_hamiltonian_superop(model, basis);
  const Mat lh_dual = dual(lh).m;
  const Mat lh_rev = time_reverse(basis, lh).m;

  const std::vector<Superoperator> ls = build_liouvillians(model, basis);

  for (Complex u : u_samples) {
    try {
      Mat gbar = Mat::Zero(n, n);
      Mat gd = Mat::Zero(n, n);   // <G_R D_R>
      Mat dgt = Mat::Zero(n, n);  // <(D_R G_R)^T> = <G_R# D_R#>
      for (int i = 0; i < model.size(); ++i) {
        const Superoperator g = resolvent(ls[i], u);
        const Superoperator d = member_dissipator(model, basis, i);
        const double wt = model.ensemble.weights[i];
        gbar += wt * g.m;
        gd += wt * (g.m * d.m);
        dgt += wt * (d.m * g.m).transpose();
      }
      Eigen::FullPivLU<Mat> lu(gbar);
      if (!lu.isInvertible()) {
        throw SingularityError("averaged resolvent singular", u);
      }
      const Mat l_u = lu.solve(gd);
      const Mat l_u_dual = gbar.transpose().fullPivLu().solve(dgt);
      const Superoperator l_u_rev =
          time_reverse(basis, Superoperator{2, l_u});

      const Mat lhs = w.m * (lh_dual + l_u_dual);
      const Mat rhs = (lh_rev + l_u_rev.m) * w.m;
      out.u_samples.push_back(u);
      out.superop_residual.push_back((lhs - rhs).cwiseAbs().maxCoeff());
    } catch (const SingularityError& e) {
      out.skipped.push_back(u);
      out.skipped_nearest.push_back(e.nearest_eigenvalue);
    }
  }
  return out;
}

Eigen::Matrix3d stationary_dispersion(const TlsModel& model) {
  HermitianBasis basis(2);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  for (int i = 0; i < model.size(); ++i) {
    const Eigen::Vector3d s =
        bloch_of_state(member_stationary_state(model, basis, i));
    const double w = model.ensemble.weights[i];
    mean += w * s;
    second += w * (s * s.transpose());
  }
  return second - mean * mean.transpose();
}

BalanceReport balance_report(const TlsModel& model,
                             const std::vector<Complex>& u_samples) {
  HermitianBasis basis(2);
  BalanceReport report;
  for (int i = 0; i < model.size(); ++i) {
    report.members.push_back(markovian_db_check(model, basis, i));
  }
  report.ensemble = nonmarkovian_db_check(model, u_samples);
  report.dispersion = stationary_dispersion(model);
  report.dispersion_max_abs = report.dispersion.cwiseAbs().maxCoeff();
  if (report.dispersion_max_abs < 1e-10) {
    report.verdict = "QRT_ASYMPTOTICALLY_VALID";
  } else {
    report.verdict = "QRT_VIOLATED";
    report.marginal = report.dispersion_max_abs < 1e-6;
  }
  return report;
}

std::string balance_report_json(const TlsModel& model,
                                const BalanceReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["model"] = {
      {"members", model.size()},
      {"n_th", model.n_th},
      {"gamma_phi", model.gamma_phi},
      {"omega", model.omega},
      {"omega_a", model.omega_a},
      {"gamma_mean", model.gamma_mean()},
  };
  json members = json::array();
  for (std::size_t i = 0; i < report.members.size(); ++i) {
    const MarkovianCheck& m = report.members[i];
    members.push_back({
        {"member", i},
        {"rate", model.ensemble.rates[i]},
        {"weight", model.ensemble.weights[i]},
        {"state_reversal", m.state_reversal},
        {"hamiltonian_commutes", m.hamiltonian_commutes},
        {"dissipator_reversal", m.dissipator_reversal},
    });
  }
  j["markovian_members"] = members;

  json freq = json::array();
  for (std::size_t k = 0; k < report.ensemble.u_samples.size(); ++k) {
    freq.push_back({
        {"u", report.ensemble.u_samples[k].real()},
        {"superop_residual", report.ensemble.superop_residual[k]},
    });
  }
  json skipped = json::array();
  for (std::size_t k = 0; k < report.ensemble.skipped.size(); ++k) {
    skipped.push_back({
        {"u", report.ensemble.skipped[k].real()},
        {"nearest_pole_re", report.ensemble.skipped_nearest[k].real()},
        {"nearest_pole_im", report.ensemble.skipped_nearest[k].imag()},
    });
  }
  j["nonmarkovian"] = {
      {"state_reversal", report.ensemble.state_reversal},
      {"frequencies", freq},
      {"skipped", skipped},
      {"note",
       "the frequency-domain generator is rational in u, so residuals "
       "vanishing at more samples than it has poles vanish identically; the "
       "default five-per-decade sweep exceeds that count for the supported "
       "ensembles"},
  };

  json xi = json::array();
  for (int r = 0; r < 3; ++r) {
    xi.push_back({report.dispersion(r, 0), report.dispersion(r, 1),
                  report.dispersion(r, 2)});
  }
  j["dispersion"] = {
      {"matrix", xi},
      {"max_abs", report.dispersion_max_abs},
  };
  j["verdict"] = report.verdict;
  j["marginal"] = report.marginal;
  return j.dump(2) + "\n";
}

}  // namespace qrtsim
