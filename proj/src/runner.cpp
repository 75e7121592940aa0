#include "qrtsim/runner.hpp"

#include <filesystem>
#include <sstream>
#include <vector>

#include "qrtsim/analytic.hpp"
#include "qrtsim/balance.hpp"
#include "qrtsim/config.hpp"
#include "qrtsim/correlations.hpp"
#include "qrtsim/csv.hpp"
#include "qrtsim/dynamics.hpp"

namespace qrtsim {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * double(i) / double(n - 1);
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
  }
  return out;
}

std::string out_path(const RunOptions& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return (std::filesystem::path(opt.out_dir) / name).string();
}

ConfigFile require_config(const RunOptions& opt) {
  if (!opt.config_path) {
    throw ValidationError("command '" + opt.command +
                          "' requires --config <path>");
  }
  return ConfigFile::parse_file(*opt.config_path);
}

void describe_model(CsvWriter& csv, const TlsModel& model) {
  std::ostringstream rates, weights;
  for (int i = 0; i < model.size(); ++i) {
    rates << (i ? "," : "") << format_g17(model.ensemble.rates[i]);
    weights << (i ? "," : "") << format_g17(model.ensemble.weights[i]);
  }
  csv.comment("rates: " + rates.str());
  csv.comment("weights: " + weights.str());
  csv.comment("n_th: " + format_g17(model.n_th));
  csv.comment("gamma_phi: " + format_g17(model.gamma_phi));
  csv.comment("omega: " + format_g17(model.omega));
  csv.comment("omega_a: " + format_g17(model.omega_a));
  csv.comment("gamma_mean: " + format_g17(model.gamma_mean()));
}

Mat initial_state(const ConfigFile& cfg) {
  return bloch_state(cfg.get_double("run", "sx", 0.0),
                     cfg.get_double("run", "sy", 0.0),
                     cfg.get_double("run", "sz", 1.0));
}

int cmd_evolve(const RunOptions& opt, std::ostream& out) {
  const ConfigFile cfg = require_config(opt);
  const TlsModel model = build_model(cfg);
  const double t_max = cfg.require_double("run", "t_max");
  if (!(t_max > 0.0)) throw ValidationError("t_max must be > 0");
  const int points = cfg.get_int("run", "points", 501);
  if (points < 2) throw ValidationError("points must be >= 2");
  const Mat rho0 = initial_state(cfg);

  const Trajectory traj =
      ensemble_density(model, rho0, linspace(0.0, t_max, points));

  CsvWriter csv(out_path(opt, "evolve.csv"));
  csv.comment("ensemble-averaged state evolution");
  describe_model(csv, model);
  csv.header({"t", "rho_pp", "rho_mm", "rho_pm_re", "rho_pm_im", "s_x", "s_y",
              "s_z"});
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    const Mat& rho = traj.states[i];
    const Eigen::Vector3d s = bloch_of_state(rho);
    csv.row({traj.t[i], rho(0, 0).real(), rho(1, 1).real(), rho(0, 1).real(),
             rho(0, 1).imag(), s(0), s(1), s(2)});
  }
  out << "wrote evolve.csv (" << traj.t.size() << " rows)\n";
  return 0;
}

int cmd_correlate(const RunOptions& opt, std::ostream& out) {
  const ConfigFile cfg = require_config(opt);
  const TlsModel model = build_model(cfg);
  const Mat op_o = operator_by_name(cfg.require_string("run", "op_o"));
  const Mat op_a = operator_by_name(cfg.require_string("run", "op_a"));
  const double t_wait = cfg.require_double("run", "t_wait");
  if (t_wait < 0.0) throw ValidationError("t_wait must be >= 0");
  const double tau_max = cfg.require_double("run", "tau_max");
  if (!(tau_max > 0.0)) throw ValidationError("tau_max must be > 0");
  const int points = cfg.get_int("run", "points", 401);
  if (points < 2) throw ValidationError("points must be >= 2");
  const Mat rho0 = initial_state(cfg);

  const CorrelationGrid grid = two_time_grid(
      model, op_o, op_a, rho0, t_wait, linspace(0.0, tau_max, points));

  CsvWriter csv(out_path(opt, "correlate.csv"));
  csv.comment("two-time correlation: exact vs regression approximation");
  describe_model(csv, model);
  csv.comment("op_o: " + cfg.require_string("run", "op_o"));
  csv.comment("op_a: " + cfg.require_string("run", "op_a"));
  csv.comment("t_wait: " + format_g17(t_wait));
  csv.header({"tau", "exact_re", "exact_im", "qrt_re", "qrt_im", "dev_re",
              "dev_im"});
  for (std::size_t i = 0; i < grid.tau.size(); ++i) {
    csv.row({grid.tau[i], grid.exact[i].real(), grid.exact[i].imag(),
             grid.qrt[i].real(), grid.qrt[i].imag(), grid.deviation[i].real(),
             grid.deviation[i].imag()});
  }
  out << "wrote correlate.csv (" << grid.tau.size() << " rows)\n";
  return 0;
}

int cmd_kernels(const RunOptions& opt, std::ostream& out) {
  const ConfigFile cfg = require_config(opt);
  const TlsModel model = build_model(cfg);
  const double mean = model.gamma_mean();
  const double scale = mean > 0.0 ? mean : 1.0;
  const double u_min = cfg.get_double("run", "u_min", 1e-2 * scale);
  const double u_max = cfg.get_double("run", "u_max", 1e2 * scale);
  if (!(u_min > 0.0) || !(u_max > u_min)) {
    throw ValidationError("need 0 < u_min < u_max");
  }
  const int points = cfg.get_int("run", "points", 201);
  if (points < 2) throw ValidationError("points must be >= 2");

  const RateEnsemble dressed = model.dressed_ensemble();
  CsvWriter csv(out_path(opt, "kernels.csv"));
  csv.comment("frequency-domain memory kernels on the real axis");
  describe_model(csv, model);
  csv.header({"u", "k_population", "k_coherence", "gamma_x", "gamma_y",
              "gamma_z", "upsilon"});
  for (double u : logspace(u_min, u_max, points)) {
    const Complex uu(u, 0.0);
    const DrivenKernelValues v =
        driven_kernel_values(dressed, model.gamma_phi, model.omega, uu);
    csv.row({u, kernel_population_value(dressed, uu).real(),
             kernel_coherence_value(dressed, model.gamma_phi, uu).real(),
             v.gamma_x.real(), v.gamma_y.real(), v.gamma_z.real(),
             v.upsilon.real()});
  }
  out << "wrote kernels.csv (" << points << " rows)\n";
  return 0;
}

int cmd_balance(const RunOptions& opt, std::ostream& out) {
  const ConfigFile cfg = require_config(opt);
  const TlsModel model = build_model(cfg);
  const double scale = model.gamma_mean() > 0.0 ? model.gamma_mean() : 1.0;
  std::vector<Complex> u;
  if (cfg.has("run", "u_samples")) {
    // absolute units, like every other generic-command parameter
    for (double s : cfg.require_list("run", "u_samples")) {
      if (!(s > 0.0)) throw ValidationError("u_samples must be > 0");
      u.push_back(Complex(s, 0.0));
    }
  } else {
    for (double s : {1e-2, 1e-1, 1.0, 10.0, 100.0}) {
      u.push_back(Complex(s * scale, 0.0));
    }
  }

  const BalanceReport report = balance_report(model, u);
  const std::string json = balance_report_json(model, report);
  const std::string path = out_path(opt, "balance.json");
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot open output file '" + path + "'");
  file << json;
  out << "verdict: " << report.verdict
      << (report.marginal ? " (marginal)" : "") << "\n";
  out << "wrote balance.json\n";
  return 0;
}

// ---- figures ----------------------------------------------------------------

RateEnsemble figure_ensemble(double b) {
  return exponential_ensemble(1.0, b, 0.5 * b, 5);
}

int cmd_fig1(const RunOptions& opt, std::ostream& out) {
  TlsModel model;
  model.ensemble = exponential_ensemble(1.0, 2.15, 1.075, 5);
  const double mean = model.gamma_mean();
  model.gamma_phi = 0.02 * mean;

  const Mat rho0 = bloch_state(0.0, 0.0, 1.0);
  const std::vector<double> gamma_t{0.25, 0.75, 2.5, 250.0};
  std::vector<double> tau_grid = linspace(0.0, 20.0 / mean, 401);

  CsvWriter csv(out_path(opt, "fig1.csv"));
  csv.comment(
      "cross correlation <sigma_x(t) sigma_y(t+tau)> / i for free decay from "
      "the excited state");
  describe_model(csv, model);
  csv.header({"gamma_t", "gamma_tau", "exact_re", "exact_im", "qrt_re",
              "qrt_im", "dev_re", "dev_im"});
  const Complex over_i(0.0, -1.0);
  for (double gt : gamma_t) {
    const CorrelationGrid grid =
        two_time_grid(model, pauli_x(), pauli_y(), rho0, gt / mean, tau_grid);
    for (std::size_t i = 0; i < grid.tau.size(); ++i) {
      const Complex ex = grid.exact[i] * over_i;
      const Complex qr = grid.qrt[i] * over_i;
      const Complex dv = grid.deviation[i] * over_i;
      csv.row({gt, grid.tau[i] * mean, ex.real(), ex.imag(), qr.real(),
               qr.imag(), dv.real(), dv.imag()});
    }
  }
  out << "wrote fig1.csv\n";
  return 0;
}

int cmd_fig2(const RunOptions& opt, std::ostream& out) {
  const std::vector<std::pair<std::string, double>> curves{
      {"2.15", 2.15}, {"6.05", 6.05}, {"10.6", 10.6}, {"15.2", 15.2}};
  for (const auto& [label, b] : curves) {
    TlsModel model;
    model.ensemble = figure_ensemble(b);
    const double mean = model.gamma_mean();
    model.gamma_phi = 0.02 * mean;
    const RateEnsemble dressed = model.dressed_ensemble();

    CsvWriter csv(out_path(opt, "fig2_b" + label + ".csv"));
    csv.comment("coherence survival vs its Markovian reference");
    describe_model(csv, model);
    csv.comment("b: " + label);
    csv.header({"gamma_t", "p_phi", "markov_ref"});
    for (double gt : linspace(0.0, 15.0, 601)) {
      const double t = gt / mean;
      csv.row({gt, survival_coherence(dressed, model.gamma_phi, t),
               std::exp(-(model.gamma_phi + 0.5 * mean) * t)});
    }
    out << "wrote fig2_b" << label << ".csv\n";
  }
  return 0;
}

void stationary_correlation_figure(const RunOptions& opt, std::ostream& out,
                                   std::ostream& err, const std::string& file,
                                   double b, double omega_over_gamma,
                                   double gamma_phi_over_gamma) {
  TlsModel model;
  model.ensemble = figure_ensemble(b);
  const double mean = model.gamma_mean();
  model.gamma_phi = gamma_phi_over_gamma * mean;
  model.omega = omega_over_gamma * mean;

  const Mat rho0 = bloch_state(0.0, 0.0, 1.0);
  const StationarityProbe probe = stationarity_time(model, rho0);
  if (!probe.reached) {
    std::ostringstream msg;
    msg << file << ": stationarity probe timed out at t = " << probe.time
        << " (residual " << probe.residual << ")";
    if (opt.strict) throw ToleranceError(msg.str());
    err << "warning: " << msg.str() << "\n";
  }

  std::vector<double> tau_grid{0.0};
  for (double gtau : logspace(1e-2, 1e3, 400)) tau_grid.push_back(gtau / mean);

  const CorrelationGrid grid = two_time_grid(model, sigma_plus(), sigma_minus(),
                                             rho0, probe.time, tau_grid);
  const double c0 = grid.exact[0].real();
  if (!(std::abs(c0) > 0.0)) {
    throw Error(file + ": vanishing equal-time correlation, cannot normalize");
  }

  CsvWriter csv(out_path(opt, file));
  csv.comment(
      "stationary emitter correlation <sigma^+(t*) sigma^-(t*+tau)>, "
      "normalized by its tau = 0 value");
  describe_model(csv, model);
  csv.comment("b: " + format_g17(b));
  csv.comment("omega_over_gamma: " + format_g17(omega_over_gamma));
  csv.comment("gamma_phi_over_gamma: " + format_g17(gamma_phi_over_gamma));
  csv.comment("gamma_t_star: " + format_g17(probe.time * mean));
  csv.comment(std::string("stationary: ") + (probe.reached ? "yes" : "no"));
  csv.comment("c0: " + format_g17(c0));
  csv.header({"gamma_tau", "exact_re", "exact_im", "qrt_re", "qrt_im",
              "dev_re", "dev_im"});
  for (std::size_t i = 0; i < grid.tau.size(); ++i) {
    csv.row({grid.tau[i] * mean, grid.exact[i].real() / c0,
             grid.exact[i].imag() / c0, grid.qrt[i].real() / c0,
             grid.qrt[i].imag() / c0, grid.deviation[i].real() / c0,
             grid.deviation[i].imag() / c0});
  }
  out << "wrote " << file << "\n";
}

int cmd_fig3(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const std::vector<std::pair<std::string, double>> curves{
      {"10.6", 10.6}, {"6.05", 6.05}, {"2.15", 2.15}};
  for (const auto& [label, b] : curves) {
    stationary_correlation_figure(opt, out, err, "fig3_b" + label + ".csv", b,
                                  0.2, 0.02);
  }
  return 0;
}

int cmd_fig4(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const std::vector<std::pair<std::string, double>> curves{
      {"10.6", 10.6}, {"6.05", 6.05}, {"2.15", 2.15}};
  for (const auto& [label, b] : curves) {
    stationary_correlation_figure(opt, out, err, "fig4_b" + label + ".csv", b,
                                  0.2, 0.1);
  }
  return 0;
}

int cmd_fig5(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  stationary_correlation_figure(opt, out, err, "fig5_om1.csv", 2.15, 1.0, 0.1);
  stationary_correlation_figure(opt, out, err, "fig5_om5.csv", 2.15, 5.0, 0.1);
  return 0;
}

}  // namespace

int run_command(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.command == "evolve") return cmd_evolve(opt, out);
  if (opt.command == "correlate") return cmd_correlate(opt, out);
  if (opt.command == "kernels") return cmd_kernels(opt, out);
  if (opt.command == "balance") return cmd_balance(opt, out);
  if (opt.command == "fig1") return cmd_fig1(opt, out);
  if (opt.command == "fig2") return cmd_fig2(opt, out);
  if (opt.command == "fig3") return cmd_fig3(opt, out, err);
  if (opt.command == "fig4") return cmd_fig4(opt, out, err);
  if (opt.command == "fig5") return cmd_fig5(opt, out, err);
  throw ValidationError("unknown command '" + opt.command + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return 2;
  if (dynamic_cast<const SingularityError*>(&e)) return 2;
  if (dynamic_cast<const StabilityError*>(&e)) return 3;
  if (dynamic_cast<const ToleranceError*>(&e)) return 3;
  if (dynamic_cast<const KernelError*>(&e)) return 3;
  return 1;
}

}  // namespace qrtsim
