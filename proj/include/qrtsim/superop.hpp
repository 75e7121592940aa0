#pragma once

#include <functional>
#include <vector>

#include "qrtsim/basis.hpp"
#include "qrtsim/types.hpp"

namespace qrtsim {

// A linear map on operators, stored as its matrix in a HermitianBasis:
// S_ij = Tr{B_i L[B_j]}.  Coordinates of states and observables live in the
// same basis, so the matrix that evolves state coordinates is also the matrix
// that evolves expectation-value functionals (Tr{O rho} = o . r is bilinear
// in the two coordinate vectors, with no conjugation).
struct Superoperator {
  int dim = 0;  // Hilbert-space dimension d; matrix is d^2 x d^2
  Mat m;
};

// Builds the matrix of an arbitrary operator map given its action X -> L[X].
Superoperator superop_from_action(const HermitianBasis& basis,
                                  const std::function<Mat(const Mat&)>& action);

// Commutator generator X -> -i [H, X] for Hermitian H (hbar = 1).
// Throws ValidationError if H is not Hermitian within 1e-12.
Superoperator commutator_superop(const HermitianBasis& basis, const Mat& h);

// Dissipator in standard form with Hermitian coefficient matrix a and jump
// operators V: X -> (1/2) sum_{ab} a_ab ([V_a, X V_b^dag] + [V_a X, V_b^dag]).
// Throws ValidationError if a is not Hermitian or sizes mismatch.
Superoperator lindblad_superop(const HermitianBasis& basis, const Mat& a,
                               const std::vector<Mat>& ops);

// Same form without the Hermiticity check on `a`; used for frequency-domain
// generators whose coefficient matrices are complex off the real axis.
Superoperator lindblad_superop_unchecked(const HermitianBasis& basis,
                                         const Mat& a,
                                         const std::vector<Mat>& ops);

// Left-multiplication map X -> rho X, matrix W_ij = Tr{B_i rho B_j}.
Superoperator lmul_superop(const HermitianBasis& basis, const Mat& rho);

// Adjoint with respect to the trace pairing Tr{O L[X]} = Tr{L#[O] X}.
// In a Hermitian basis this is the plain transpose (no conjugation).
Superoperator dual(const Superoperator& s);

// Time reversal: conjugation in the computational (energy) basis, i.e.
// Theta conj(S) Theta with Theta = diag(conj_signs).
Superoperator time_reverse(const HermitianBasis& basis, const Superoperator& s);

// Largest entry magnitude.
double superop_norm(const Superoperator& s);

// exp(S t), via eigendecomposition when the eigenvector matrix is well
// conditioned, otherwise via a scaling-and-squaring matrix exponential.
// t = 0 returns the exact identity.
Superoperator expm_superop(const Superoperator& s, double t);

// Repeated exp(S t) evaluations for a grid of times; the spectral
// decomposition is computed once.
class PropagatorCache {
 public:
  explicit PropagatorCache(const Superoperator& s);
  Mat at(double t) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  Mat base_;
  bool use_fallback_ = false;
  CVec eigenvalues_;
  Mat vectors_;
  Mat vectors_inv_;
};

// Resolvent (u I - S)^{-1} for complex u.  Verifies the solve by residual
// (max |(uI - S) G - I| <= 1e-10); on a singular or ill-conditioned system
// throws SingularityError carrying the eigenvalue of S nearest to u.
Superoperator resolvent(const Superoperator& s, Complex u);

}  // namespace qrtsim
