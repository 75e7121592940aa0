#pragma once

#include <vector>

#include "qrtsim/types.hpp"

namespace qrtsim {

// Bilinear trace pairing of two coordinate vectors: Tr{X Y} = sum_i x_i y_i
// with no conjugation (the basis elements are Hermitian).
inline Complex trace_pairing(const CVec& x, const CVec& y) {
  return x.cwiseProduct(y).sum();
}

// Trace-orthonormal Hermitian operator basis for d-dimensional Hilbert space:
// Tr{B_i B_j} = delta_ij, every B_i Hermitian, B_0 proportional to identity.
//
// For d = 2 the order is exactly {I, sigma_x, sigma_y, sigma_z} / sqrt(2).
// For general d: normalized identity first, then for each index pair j < k the
// symmetric element (E_jk + E_kj)/sqrt(2) followed by the antisymmetric element
// -i(E_jk - E_kj)/sqrt(2), then the traceless diagonal elements
// diag(1,..,1,-l,0,..,0)/sqrt(l(l+1)) for l = 1..d-1.
class HermitianBasis {
 public:
  explicit HermitianBasis(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const Mat& element(int i) const { return elements_.at(i); }

  // Coordinates x_i = Tr{B_i X} of an arbitrary (not necessarily Hermitian)
  // operator X.  For Hermitian X all coordinates are real.
  CVec coords(const Mat& x) const;

  // Inverse map: X = sum_i x_i B_i.
  Mat from_coords(const CVec& x) const;

  // Sign of each basis element under entrywise complex conjugation in the
  // computational basis: +1 where conj(B_i) = B_i (real elements), -1 where
  // conj(B_i) = -B_i (purely imaginary elements).  For d = 2: {+1,+1,-1,+1}.
  const Eigen::VectorXd& conj_signs() const { return conj_signs_; }

 private:
  int dim_;
  std::vector<Mat> elements_;
  Eigen::VectorXd conj_signs_;
};

}  // namespace qrtsim
