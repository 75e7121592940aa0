#include "qrtsim/superop.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace qrtsim {

namespace {

bool nearly_hermitian(const Mat& h, double tol) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Complex nearest_eigenvalue(const Mat& m, Complex u) {
  Eigen::ComplexEigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  const CVec& ev = es.eigenvalues();
  Complex best = ev(0);
  double dist = std::abs(ev(0) - u);
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    const double d = std::abs(ev(i) - u);
    if (d < dist) {
      dist = d;
      best = ev(i);
    }
  }
  return best;
}

}  // namespace

Superoperator superop_from_action(
    const HermitianBasis& basis, const std::function<Mat(const Mat&)>& action) {
  const int n = basis.size();
  Superoperator s{basis.dim(), Mat(n, n)};
  for (int j = 0; j < n; ++j) {
    const Mat lbj = action(basis.element(j));
    for (int i = 0; i < n; ++i) s.m(i, j) = (basis.element(i) * lbj).trace();
  }
  return s;
}

Superoperator commutator_superop(const HermitianBasis& basis, const Mat& h) {
  if (h.rows() != basis.dim() || h.cols() != basis.dim()) {
    throw ValidationError("hamiltonian dimension mismatch with basis");
  }
  if (!nearly_hermitian(h, 1e-12)) {
    throw ValidationError("hamiltonian must be Hermitian");
  }
  const Complex mi(0.0, -1.0);
  return superop_from_action(
      basis, [&](const Mat& x) { return mi * (h * x - x * h); });
}

Superoperator lindblad_superop_unchecked(const HermitianBasis& basis,
                                         const Mat& a,
                                         const std::vector<Mat>& ops) {
  const int k = static_cast<int>(ops.size());
  if (a.rows() != k || a.cols() != k) {
    throw ValidationError("coefficient matrix size must match operator count");
  }
  for (const Mat& v : ops) {
    if (v.rows() != basis.dim() || v.cols() != basis.dim()) {
      throw ValidationError("jump operator dimension mismatch with basis");
    }
  }
  return superop_from_action(basis, [&](const Mat& x) {
    Mat out = Mat::Zero(basis.dim(), basis.dim());
    for (int al = 0; al < k; ++al) {
      for (int be = 0; be < k; ++be) {
        const Mat& va = ops[al];
        const Mat vbd = ops[be].adjoint();
        // ([V_a, X V_b^dag] + [V_a X, V_b^dag]) / 2
        out += 0.5 * a(al, be) *
               (va * x * vbd - x * vbd * va + va * x * vbd - vbd * va * x);
      }
    }
    return out;
  });
}

Superoperator lindblad_superop(const HermitianBasis& basis, const Mat& a,
                               const std::vector<Mat>& ops) {
  if (!nearly_hermitian(a, 1e-12)) {
    throw ValidationError("dissipator coefficient matrix must be Hermitian");
  }
  return lindblad_superop_unchecked(basis, a, ops);
}

Superoperator lmul_superop(const HermitianBasis& basis, const Mat& rho) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    throw ValidationError("state dimension mismatch with basis");
  }
  return superop_from_action(basis, [&](const Mat& x) -> Mat { return rho * x; });
}

Superoperator dual(const Superoperator& s) {
  return Superoperator{s.dim, s.m.transpose()};
}

Superoperator time_reverse(const HermitianBasis& basis,
                           const Superoperator& s) {
  if (basis.size() != s.m.rows()) {
    throw ValidationError("basis size mismatch with superoperator");
  }
  const Eigen::VectorXd& th = basis.conj_signs();
  Superoperator out{s.dim, s.m.conjugate()};
  for (Eigen::Index i = 0; i < out.m.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.m.cols(); ++j) {
      out.m(i, j) *= th(i) * th(j);
    }
  }
  return out;
}

double superop_norm(const Superoperator& s) {
  return s.m.cwiseAbs().maxCoeff();
}

PropagatorCache::PropagatorCache(const Superoperator& s)
    : dim_(s.dim), base_(s.m) {
  Eigen::ComplexEigenSolver<Mat> es(s.m);
  if (es.info() != Eigen::Success) {
    use_fallback_ = true;
    return;
  }
  eigenvalues_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
  Eigen::JacobiSVD<Mat> svd(vectors_);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > 1e8) {
    use_fallback_ = true;
    return;
  }
  vectors_inv_ = vectors_.inverse();
}

Mat PropagatorCache::at(double t) const {
  const Eigen::Index n = base_.rows();
  if (t == 0.0) return Mat::Identity(n, n);
  if (use_fallback_) return (base_ * t).exp();
  CVec ex(n);
  for (Eigen::Index i = 0; i < n; ++i) ex(i) = std::exp(eigenvalues_(i) * t);
  return vectors_ * ex.asDiagonal() * vectors_inv_;
}

Superoperator expm_superop(const Superoperator& s, double t) {
  PropagatorCache cache(s);
  return Superoperator{s.dim, cache.at(t)};
}

Superoperator resolvent(const Superoperator& s, Complex u) {
  const Eigen::Index n = s.m.rows();
  const Mat a = u * Mat::Identity(n, n) - s.m;
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible()) {
    std::ostringstream msg;
    msg << "resolvent singular at u = (" << u.real() << ", " << u.imag()
        << ")";
    throw SingularityError(msg.str(), nearest_eigenvalue(s.m, u));
  }
  Superoperator g{s.dim, lu.inverse()};
  const double residual =
      (a * g.m - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-10)) {
    std::ostringstream msg;
    msg << "resolvent solve residual " << residual << " at u = (" << u.real()
        << ", " << u.imag() << ") exceeds 1e-10";
    throw SingularityError(msg.str(), nearest_eigenvalue(s.m, u));
  }
  return g;
}

}  // namespace qrtsim
