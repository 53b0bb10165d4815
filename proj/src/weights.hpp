#pragma once

#include "perturbation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace invconn {

// Splitting of the complexified algebra into eigenblocks of ad(dbeta(zeta)),
// where zeta generates the central circle of K(S).  Eigenvalues are i*w with
// integer w when the circle closes; non-integral weights are rejected.
//
// The same coordinate space serves for k and its complexification (scalars
// widen, the basis stays), so block vectors have length k.dim() throughout.
struct IsotypicalDecomposition {
  Mat op;                                // ad(dbeta(zeta)) in basis coordinates
  std::vector<long> weights;             // distinct, sorted descending
  std::vector<std::vector<Vec>> blocks;  // bases, aligned with `weights`
  bool exact = false;
  // || sum of block projectors - identity ||, measured in floating point even
  // when the bases are exact.  Projectors are formed with the invariant form,
  // under which distinct blocks are orthogonal.
  double projector_sum_residual = 0.0;

  const std::vector<Vec>* block_of(long w) const;
  std::size_t total_dim() const;
};

// Float path: G-hermitian eigensolve of -i*ad via a Cholesky change of frame.
// Exact path: the float eigenvalues only nominate integer candidates; each
// block is then an exact kernel of (ad - i*w), and the dimensions must add up
// to dim k or the operator was not semisimple over those candidates.
IsotypicalDecomposition isotypical_decompose(const LieAlgebra& k,
                                             const Vec& dbeta_zeta,
                                             bool exact_mode,
                                             double snap_tol = 1e-6);

// Largest distance from a column of `a` to the span of the weight-w block
// (max-norm of the projection residual).  Missing block means the whole
// column counts as leakage.
double weight_block_residual(const IsotypicalDecomposition& dec, long w,
                             const Mat& a);

// Certificate that the derivative term of the integrability obstruction
// vanishes for weight reasons: omega^{0,1} is pinned to the (-w0) block, and
// an equivariant map from 2-forms on conj(n) into that block would carry
// weight (-w0) - (-2*w0) = w0 != 0, so only zero qualifies.  What remains of
// the obstruction is the purely quadratic bracket term.
struct DbarCertificate {
  long w0 = 0;
  std::size_t dim_n = 0;  // complex dimension of n
  std::vector<long> block_weights;
  std::vector<std::size_t> block_dims;
  double projector_sum_residual = 0.0;
  double omega_weight_residual = 0.0;
  bool vacuous = false;  // dim_n == 1: there are no 2-forms to obstruct
  bool exact = false;
  double eps = 1e-9;

  bool pass(double tol) const;
  // "vacuous", "vanishes", or "inconclusive" (residuals above eps)
  std::string verdict() const;
};

// Throws a hypothesis error when w0 == 0; the argument needs a nonzero
// central weight.
DbarCertificate dbar_vanishing_certificate(const HomomorphismDatum& datum,
                                           const AntiHolMap& omega01,
                                           bool exact_mode, double eps = 1e-9);

}  // namespace invconn
