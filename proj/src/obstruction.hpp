#pragma once

#include "weights.hpp"

#include <cstddef>
#include <vector>

namespace invconn {

// A k-valued alternating 2-form on an m-dimensional space, stored on the
// ordered basis pairs i < j.
struct TwoFormValued {
  std::size_t domain_dim = 0;
  std::size_t value_dim = 0;
  std::vector<Vec> comps;

  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t m);
  const Vec& at(std::size_t i, std::size_t j) const;
  double max_abs() const;
  bool exact_zero() const;  // all components exactly zero (exact data only)
};

// phi(alpha)(v ^ w) = [alpha(v), alpha(w)].  The quadratic obstruction: a
// perturbed pair yields a holomorphic structure precisely when this vanishes
// on its (0,1)-part.
TwoFormValued phi(const LieAlgebra& k, const AntiHolMap& alpha);

// Same, starting from a real connection-form matrix (k.dim x 2n).  Rejects
// matrices with nonreal entries instead of silently projecting them.
TwoFormValued phi_of_real_form(const LieAlgebra& k, const Realification& nr,
                               const Mat& w);

struct C0Report {
  TwoFormValued value;
  double residual = 0.0;
  bool member = false;
  bool exact = false;
};

// Membership of omega in the locus { phi(omega^{0,1}) = 0 }.  Exact inputs in
// exact mode give a yes/no answer; otherwise membership means the residual
// stays below eps.
C0Report c0_membership(const HomomorphismDatum& datum, const Realification& nr,
                       const Mat& omega, bool exact_mode, double eps);

// The (0,2) curvature component, computed algebraically.  Valid only when the
// certificate kills the derivative term, so a failing certificate is a
// construction error, not a warning.
TwoFormValued algebraic_curvature02(const HomomorphismDatum& datum,
                                    const AntiHolMap& omega01,
                                    const DbarCertificate& cert);

}  // namespace invconn
