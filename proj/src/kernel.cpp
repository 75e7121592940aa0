#include "qrtsim/kernel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "qrtsim/analytic.hpp"

namespace qrtsim {

namespace {

// The partial-fraction decomposition is numerically delicate: the driven
// denominator has degree 4N-2 with coefficients spanning many orders of
// magnitude, and nearby roots make double-precision residues useless.  All
// polynomial work therefore runs in 50-digit floats and only the final
// pole/residue values are rounded to double.
using Real = boost::multiprecision::cpp_bin_float_50;
using Cmp = std::complex<Real>;
using Poly = std::vector<Real>;  // coefficients, ascending powers

Poly pmul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Real(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

void padd_scaled(Poly& acc, const Poly& p, const Real& s) {
  if (acc.size() < p.size()) acc.resize(p.size(), Real(0));
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += s * p[i];
}

Cmp peval(const Poly& p, const Cmp& x) {
  Cmp acc(Real(0), Real(0));
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + Cmp(p[i], Real(0));
  return acc;
}

Poly pderiv(const Poly& p) {
  if (p.size() <= 1) return Poly{Real(0)};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = Real(i) * p[i];
  return out;
}

bool is_zero_poly(const Poly& p, const Real& scale) {
  for (const Real& c : p) {
    if (abs(c) > scale * Real(1e-60)) return false;
  }
  return true;
}

std::vector<Cmp> poly_roots(Poly p) {
  // drop negligible leading coefficients, then normalize to monic
  Real scale(0);
  for (const Real& c : p) scale = std::max(scale, Real(abs(c)));
  while (p.size() > 1 && abs(p.back()) < scale * Real(1e-45)) p.pop_back();
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 1) return {};
  const Real lead = p.back();
  for (Real& c : p) c /= lead;

  using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  MatR comp = MatR::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = Real(1);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i];
  Eigen::EigenSolver<MatR> es(comp);

  const Poly dp = pderiv(p);
  std::vector<Cmp> roots(n);
  for (int i = 0; i < n; ++i) {
    Cmp x(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
    // Newton polish against the exact 50-digit polynomial
    for (int it = 0; it < 60; ++it) {
      const Cmp f = peval(p, x);
      const Cmp df = peval(dp, x);
      if (abs(df) == Real(0)) break;
      const Cmp step = f / df;
      x -= step;
      if (abs(step) <= (abs(x) + Real(1)) * Real(1e-45)) break;
    }
    roots[i] = x;
  }
  return roots;
}

Complex to_double(const Cmp& x) {
  return Complex(static_cast<double>(x.real()), static_cast<double>(x.imag()));
}

// Collapses roots closer than 1e-8 (relative to the pole scale); residues of
// a collapsed cluster are summed, which the reconstruction check validates.
void merge_close_poles(std::vector<Complex>& poles,
                       std::vector<Complex>& residues) {
  double scale = 1.0;
  for (const Complex& p : poles) scale = std::max(scale, std::abs(p));
  const double tol = 1e-8 * scale;
  std::vector<Complex> mp, mr;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    bool merged = false;
    for (std::size_t j = 0; j < mp.size(); ++j) {
      if (std::abs(poles[i] - mp[j]) <= tol) {
        mr[j] += residues[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      mp.push_back(poles[i]);
      mr.push_back(residues[i]);
    }
  }
  poles.swap(mp);
  residues.swap(mr);
}

// Residues of num/den at the given simple poles, num and den in 50-digit
// coefficients: res_k = num(p_k) / den'(p_k).
std::vector<Cmp> residues_at(const Poly& num, const Poly& den,
                             const std::vector<Cmp>& poles) {
  const Poly dden = pderiv(den);
  std::vector<Cmp> out(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k) {
    out[k] = peval(num, poles[k]) / peval(dden, poles[k]);
  }
  return out;
}

template <typename DirectFn>
void verify_reconstruction(const RationalKernel& k, double freq_scale,
                           double value_scale, const DirectFn& direct,
                           const char* label) {
  for (int i = 0; i < 20; ++i) {
    const double u =
        freq_scale * std::pow(10.0, -3.0 + 6.0 * double(i) / 19.0);
    const Complex got = k.laplace(Complex(u, 0.0));
    const Complex want = direct(Complex(u, 0.0));
    const double err = std::abs(got - want);
    const double denom = std::max({1e-9 * value_scale, std::abs(want)});
    if (!(err <= 1e-10 * std::max(1.0, denom))) {
      std::ostringstream msg;
      msg << label << " kernel reconstruction error " << err << " at u = " << u
          << " (value " << want.real()
          << "); poles are degenerate beyond tolerance";
      throw KernelError(msg.str());
    }
  }
}

// Pole-residue form of <g/(u+g)>/<1/(u+g)> for an effective rate set.
RationalKernel scalar_kernel(const std::vector<double>& g,
                             const std::vector<double>& w) {
  const int n = static_cast<int>(g.size());
  RationalKernel out;
  out.markov_weight = 0.0;
  for (int i = 0; i < n; ++i) out.markov_weight += w[i] * g[i];
  if (n == 1) return out;

  // Q = sum_i w_i prod_{j != i} (u + g_j);  P likewise with an extra g_i.
  Poly q{Real(0)}, p{Real(0)};
  for (int i = 0; i < n; ++i) {
    Poly prod{Real(1)};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      prod = pmul(prod, Poly{Real(g[j]), Real(1)});
    }
    padd_scaled(q, prod, Real(w[i]));
    padd_scaled(p, prod, Real(w[i]) * Real(g[i]));
  }
  const std::vector<Cmp> roots = poly_roots(q);
  const std::vector<Cmp> res = residues_at(p, q, roots);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    Complex pole = to_double(roots[k]);
    // scalar kernels of distinct positive rates have simple real poles
    if (std::abs(pole.imag()) <= 1e-20 * (1.0 + std::abs(pole.real()))) {
      pole = Complex(pole.real(), 0.0);
    }
    out.poles.push_back(pole);
    out.residues.push_back(to_double(res[k]));
  }
  merge_close_poles(out.poles, out.residues);
  return out;
}

double markov_from_leads(const Poly& num, const Poly& den) {
  if (num.size() < den.size()) return 0.0;
  return static_cast<double>(num[den.size() - 1] / den[den.size() - 1]);
}

}  // namespace

Complex RationalKernel::laplace(Complex u) const {
  Complex acc(markov_weight, 0.0);
  for (std::size_t k = 0; k < poles.size(); ++k) {
    acc += residues[k] / (u - poles[k]);
  }
  return acc;
}

Complex RationalKernel::memory_at(double t) const {
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < poles.size(); ++k) {
    acc += residues[k] * std::exp(poles[k] * t);
  }
  return acc;
}

double RationalKernel::max_pole_abs() const {
  double m = 0.0;
  for (const Complex& p : poles) m = std::max(m, std::abs(p));
  return m;
}

RationalKernel invert_rational_kernel(const RateEnsemble& dressed,
                                      KernelKind kind, double gamma_phi) {
  if (dressed.rates.empty()) throw ValidationError("empty rate ensemble");
  if (gamma_phi < 0.0) throw ValidationError("gamma_phi must be >= 0");
  std::vector<double> g = dressed.rates;
  if (kind == KernelKind::coherence) {
    for (double& x : g) x = 0.5 * x + gamma_phi;
  }
  double scale = gamma_phi;
  for (double x : g) scale = std::max(scale, x);
  if (scale <= 0.0) return RationalKernel{};  // all rates vanish: K = 0

  RationalKernel k = scalar_kernel(g, dressed.weights);
  const std::vector<double> gg = g;
  const std::vector<double> ww = dressed.weights;
  verify_reconstruction(
      k, scale, scale,
      [&](Complex u) {
        Complex num(0, 0), den(0, 0);
        for (std::size_t i = 0; i < gg.size(); ++i) {
          num += ww[i] * gg[i] / (u + gg[i]);
          den += ww[i] / (u + gg[i]);
        }
        return num / den;
      },
      kind == KernelKind::population ? "population" : "coherence");
  return k;
}

DrivenKernelSet driven_rational_kernels(const RateEnsemble& dressed,
                                        double gamma_phi, double omega) {
  DrivenKernelSet set;
  set.gamma_x = invert_rational_kernel(dressed, KernelKind::coherence,
                                       gamma_phi);
  if (omega == 0.0) {
    // exact reduction: no cross coupling, transverse = coherence kernel,
    // longitudinal = population kernel
    set.gamma_y = set.gamma_x;
    set.gamma_z =
        invert_rational_kernel(dressed, KernelKind::population, gamma_phi);
    set.upsilon = RationalKernel{};
    return set;
  }

  const int n = static_cast<int>(dressed.rates.size());
  const Real gp(gamma_phi);
  const Real w2 = Real(omega) * Real(omega);

  // q_i(u) = (u + g_i)(u + g_i/2 + gamma_phi) + omega^2
  std::vector<Poly> q(n);
  for (int i = 0; i < n; ++i) {
    const Real g(dressed.rates[i]);
    q[i] = Poly{g * (g / 2 + gp) + w2, Real(1.5) * g + gp, Real(1)};
  }

  // P0 = sum w_i prod_{j != i} q_j;  P1, P2 with extra powers of g_i.
  Poly p0{Real(0)}, p1{Real(0)}, p2{Real(0)};
  for (int i = 0; i < n; ++i) {
    Poly prod{Real(1)};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      prod = pmul(prod, q[j]);
    }
    const Real w(dressed.weights[i]);
    const Real g(dressed.rates[i]);
    padd_scaled(p0, prod, w);
    padd_scaled(p1, prod, w * g);
    padd_scaled(p2, prod, w * g * g);
  }

  // common denominator (u P0 + P1)(u P0 + P1/2 + gamma_phi P0) + omega^2 P0^2
  const Poly u_poly{Real(0), Real(1)};
  Poly up0 = pmul(u_poly, p0);
  Poly f1 = up0;
  padd_scaled(f1, p1, Real(1));
  Poly f2 = up0;
  padd_scaled(f2, p1, Real(0.5));
  padd_scaled(f2, p0, gp);
  Poly den = pmul(f1, f2);
  padd_scaled(den, pmul(p0, p0), w2);

  // numerators of the y / z / cross kernels over `den`
  Poly up1 = pmul(u_poly, p1);
  Poly g1 = up1;
  padd_scaled(g1, p2, Real(1));  // u P1 + P2
  Poly num_y = pmul(g1, f2);
  for (Real& c : num_y) c *= Real(0.5);
  padd_scaled(num_y, pmul(p0, p1), w2 / 2);
  padd_scaled(num_y, den, gp);

  Poly g2 = up1;
  padd_scaled(g2, p2, Real(0.5));
  padd_scaled(g2, p1, gp);  // u P1 + P2/2 + gamma_phi P1
  Poly num_z = pmul(f1, g2);
  padd_scaled(num_z, pmul(p0, p1), w2);

  Poly num_u = pmul(p0, p2);
  padd_scaled(num_u, pmul(p1, p1), Real(-1));
  for (Real& c : num_u) c *= Real(omega) / 2;

  const std::vector<Cmp> roots = poly_roots(den);

  Real den_scale(0);
  for (const Real& c : den) den_scale = std::max(den_scale, Real(abs(c)));

  auto build = [&](const Poly& num) {
    RationalKernel k;
    if (is_zero_poly(num, den_scale)) return k;
    k.markov_weight = markov_from_leads(num, den);
    const std::vector<Cmp> res = residues_at(num, den, roots);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      k.poles.push_back(to_double(roots[i]));
      k.residues.push_back(to_double(res[i]));
    }
    merge_close_poles(k.poles, k.residues);
    return k;
  };
  set.gamma_y = build(num_y);
  set.gamma_z = build(num_z);
  set.upsilon = build(num_u);

  double scale = std::max(gamma_phi, std::abs(omega));
  for (double g : dressed.rates) scale = std::max(scale, g);
  const double mean = ensemble_stats(dressed).mean;
  auto direct = [&](Complex u) {
    return driven_kernel_values(dressed, gamma_phi, omega, u);
  };
  verify_reconstruction(
      set.gamma_y, scale, mean,
      [&](Complex u) { return direct(u).gamma_y; }, "transverse-y");
  verify_reconstruction(
      set.gamma_z, scale, mean,
      [&](Complex u) { return direct(u).gamma_z; }, "longitudinal");
  verify_reconstruction(
      set.upsilon, scale, mean,
      [&](Complex u) { return direct(u).upsilon; }, "cross-coupling");
  return set;
}

}  // namespace qrtsim
