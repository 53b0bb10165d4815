#pragma once
#include <cstdint>

#include "semidirect.hpp"

namespace invconn {

// The space W = Hom_R(n, k) of real-linear maps from (the realification of)
// n into k.  An element is a k.dim x 2n real matrix; vectorization stacks
// columns, so vec index = column * k.dim + row.
struct PerturbationSpace {
  Realification n_real;
  LieAlgebra k;
  std::size_t dim() const { return n_real.real.dim() * k.dim(); }
  Vec vectorize(const Mat& w) const;
  Mat unvectorize(const Vec& v) const;
};

// A homomorphism K(S) -> K at the Lie algebra level, together with the
// distinguished central circle generator zeta of k(S) and the integer weight
// by which that circle scales n.  All three structural hypotheses are
// checked, never assumed.
struct HomomorphismDatum {
  LieAlgebra ks;  // compact form of the Levi factor
  LieAlgebra k;   // structure group's compact algebra
  Mat dbeta;      // k.dim x ks.dim, real entries
  Vec zeta;       // ks coordinates
  int weight_on_n = 0;

  Vec dbeta_of(const Vec& xi) const { return dbeta.apply(xi); }
  // Throws: Input for shape problems, Construction when dbeta is not a
  // homomorphism or zeta not central, Hypothesis when the circle does not act
  // on n as the single scalar character i * weight_on_n.
  void validate(const DerivationAction& ks_on_n, double eps) const;
};

// The infinitesimal action of xi in k(S) on W:
//   (xi . w)(v) = [dbeta(xi), w(v)] - w(act(xi) v).
Mat apply_action(const HomomorphismDatum& datum, const DerivationAction& d,
                 const Realification& nr, const Vec& xi, const Mat& w);
// Matrix of that operator on vec(W).
Mat action_operator(const HomomorphismDatum& datum, const DerivationAction& d,
                    const Realification& nr, const Vec& xi);

// Joint kernel of the basis action operators; K(S) is assumed connected (the
// caller enforces the declaration).  Exact elimination in exact mode, SVD
// thresholding otherwise.  The basis is returned as matrices.
std::vector<Mat> invariant_subspace(const HomomorphismDatum& datum,
                                    const DerivationAction& d,
                                    const Realification& nr, bool exact_mode,
                                    double eps);

// A complex-linear map nbar -> h stored as its matrix: column b holds the
// h-coordinates of the image of the b-th basis vector (the n-basis viewed in
// nbar).  Applied to v with n-coordinates z it evaluates to A * conj(z).
struct AntiHolMap {
  Mat a;  // k.dim x n.dim complex
};

// omega^{0,1}(v) = (omega(v) + i omega(iv)) / 2, the antilinear part of a
// real map into k viewed in h = k (x) C.
AntiHolMap real_to_antiholomorphic(const Mat& w, const Realification& nr);
// Inverse: omega = alpha + sigma(alpha); lands back in k (real coordinates).
Mat antiholomorphic_to_real(const AntiHolMap& alpha, const Realification& nr);

struct CandidatePair {
  HomomorphismDatum beta;
  Mat omega;  // k.dim x 2n real
  // Checks the datum and that omega is annihilated by every action operator.
  void validate(const DerivationAction& d, const Realification& nr,
                double eps) const;
};

enum class EquivalenceVerdict { Equivalent, Inequivalent, Undecided };

struct EquivalenceResult {
  EquivalenceVerdict verdict = EquivalenceVerdict::Undecided;
  // For Equivalent: conjugator as a product exp(x_m)...exp(x_1) given by the
  // k-coordinates of each factor, plus the achieved alignment error.
  std::vector<Vec> witness;
  double witness_error = 0.0;
  // For Inequivalent: which Ad-invariant separated the pairs.
  std::string separator;
  double separation = 0.0;
};

struct EquivalenceOptions {
  double eps = 1e-9;
  double separator_tol = 1e-6;
  double success_tol = 1e-8;
  std::size_t starts = 24;
  std::size_t iterations = 120;
  std::uint64_t seed = 12345;
};

// Decides whether two pairs on the same k(S)/k lie on one Ad(K)-orbit:
// cheap Ad-invariant separators first (spectra of ad(dbeta(xi)), Gram data of
// the joint tuple), then a Gauss-Newton orbit alignment over products of
// exponentials.  Never claims Inequivalent without a separator.
EquivalenceResult equivalent_pairs(const CandidatePair& p1,
                                   const CandidatePair& p2,
                                   const EquivalenceOptions& opts);

}  // namespace invconn
