#pragma once
#include <functional>

#include "lie_algebra.hpp"

namespace invconn {

// An action of s on n by derivations, one matrix per s-basis vector, with
// entries over n's scalar field.  validate() checks the Leibniz rule on all
// n-basis pairs and that xi -> act(xi) is a Lie algebra homomorphism.
struct DerivationAction {
  LieAlgebra s;  // acting algebra (a Levi factor or its compact form)
  LieAlgebra n;
  std::vector<Mat> act;

  Mat act_of(const Vec& xi) const;
  void validate(double eps) const;
  bool is_trivial() const;
};

// n ⋊ s with n embedded as indices [0, dim n) and s as [dim n, dim n + dim s).
struct SemidirectSum {
  LieAlgebra p;
  std::size_t n_dim = 0;
  std::size_t s_dim = 0;
};

// Builds the sum after validating the action.  Mixed fields are allowed in
// one direction only: complex n with real s realifies n first (the result is
// then a real algebra of dimension 2 dim n + dim s).
SemidirectSum semidirect_sum(const LieAlgebra& n, const LieAlgebra& s,
                             const DerivationAction& d, double eps);

// Whether the first n_dim coordinates span a subalgebra and an ideal; this is
// exactly the integrability (and hence flatness) of the distribution spanned
// by left-translates of that subspace.
struct IntegrabilityReport {
  double closure_residual = 0.0;
  double ideal_residual = 0.0;
  bool exact = true;
  std::size_t worst_pair[2] = {0, 0};
  bool pass(double eps) const {
    return (exact && closure_residual == 0.0 && ideal_residual == 0.0) ||
           std::max(closure_residual, ideal_residual) <= eps;
  }
};
IntegrabilityReport verify_horizontal_integrability(const LieAlgebra& p,
                                                    std::size_t n_dim);

// A matrix realization of N ⋊ K(S): ambient m x m matrices for the basis of n
// (complex basis when n is complex) and for the real basis of k(S) = Lie K(S).
// exp on the n-side is expected to terminate (nilpotent matrices); the k(S)
// side uses the series.
struct MatrixGroupModel {
  std::size_t ambient = 0;
  std::vector<Mat> n_basis;
  std::vector<Mat> s_basis;

  // Real basis matrices of the realified n followed by the s basis.
  std::vector<Mat> combined_real_basis(bool n_complex) const;

  Eigen::MatrixXcd exp_n(const Eigen::VectorXcd& coords) const;
  Eigen::MatrixXcd exp_s(const Eigen::VectorXd& coords) const;
  Eigen::MatrixXcd n_matrix(const Eigen::VectorXcd& coords) const;
  Eigen::MatrixXcd s_matrix(const Eigen::VectorXd& coords) const;

  // Exact checks against the realified sum p = n_R ⋊ s: commutators of model
  // matrices must reproduce the structure constants, and conjugation by
  // sampled exp(s) must preserve the model of n and match exp(act).
  void validate(const SemidirectSum& g_level, double eps) const;
};

struct ConsistencyReport {
  double max_residual = 0.0;
  std::size_t worst_pair[2] = {0, 0};
};
// Finite-difference check: symmetrized logs of group commutators of
// one-parameter subgroups at step h reproduce the structure constants of the
// realified sum with O(h^2) error.
ConsistencyReport model_consistency(const SemidirectSum& g_level,
                                    const MatrixGroupModel& m,
                                    std::size_t samples, double h,
                                    std::uint64_t seed = 1);

}  // namespace invconn
