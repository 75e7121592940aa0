#include "qrtsim/basis.hpp"

#include <cmath>

namespace qrtsim {

HermitianBasis::HermitianBasis(int dim) : dim_(dim) {
  if (dim < 2) {
    throw ValidationError("hermitian basis requires dimension >= 2, got " +
                          std::to_string(dim));
  }
  const int n = dim * dim;
  elements_.reserve(n);
  std::vector<double> signs;
  signs.reserve(n);

  elements_.push_back(Mat::Identity(dim, dim) / std::sqrt(double(dim)));
  signs.push_back(1.0);

  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Mat sym = Mat::Zero(dim, dim);
      sym(j, k) = s;
      sym(k, j) = s;
      elements_.push_back(sym);
      signs.push_back(1.0);

      Mat anti = Mat::Zero(dim, dim);
      anti(j, k) = Complex(0.0, -s);
      anti(k, j) = Complex(0.0, s);
      elements_.push_back(anti);
      signs.push_back(-1.0);
    }
  }
  for (int l = 1; l < dim; ++l) {
    Mat d = Mat::Zero(dim, dim);
    const double norm = 1.0 / std::sqrt(double(l) * double(l + 1));
    for (int k = 0; k < l; ++k) d(k, k) = norm;
    d(l, l) = -double(l) * norm;
    elements_.push_back(d);
    signs.push_back(1.0);
  }

  conj_signs_ = Eigen::Map<Eigen::VectorXd>(signs.data(), n);
}

CVec HermitianBasis::coords(const Mat& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw ValidationError("operator dimension mismatch with basis");
  }
  CVec out(size());
  for (int i = 0; i < size(); ++i) out(i) = (elements_[i] * x).trace();
  return out;
}

Mat HermitianBasis::from_coords(const CVec& x) const {
  if (x.size() != size()) {
    throw ValidationError("coordinate vector length mismatch with basis");
  }
  Mat out = Mat::Zero(dim_, dim_);
  for (int i = 0; i < size(); ++i) out += x(i) * elements_[i];
  return out;
}

}  // namespace qrtsim
