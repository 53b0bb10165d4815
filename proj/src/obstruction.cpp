#include "obstruction.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace invconn {

std::size_t TwoFormValued::pair_index(std::size_t i, std::size_t j,
                                      std::size_t m) {
  // ordered pairs (i, j), i < j, laid out row by row
  return i * m - i * (i + 1) / 2 + (j - i - 1);
}

const Vec& TwoFormValued::at(std::size_t i, std::size_t j) const {
  return comps[pair_index(i, j, domain_dim)];
}

double TwoFormValued::max_abs() const {
  double m = 0.0;
  for (const auto& c : comps) m = std::max(m, vec_max_abs(c));
  return m;
}

bool TwoFormValued::exact_zero() const {
  for (const auto& c : comps)
    if (!vec_is_zero(c)) return false;
  return true;
}

TwoFormValued phi(const LieAlgebra& k, const AntiHolMap& alpha) {
  if (alpha.a.rows() != k.dim())
    fail(ErrorKind::Input, "map has " + std::to_string(alpha.a.rows()) +
                               " rows, expected dim k = " +
                               std::to_string(k.dim()));
  TwoFormValued f;
  f.domain_dim = alpha.a.cols();
  f.value_dim = k.dim();
  for (std::size_t i = 0; i + 1 < f.domain_dim; ++i)
    for (std::size_t j = i + 1; j < f.domain_dim; ++j)
      f.comps.push_back(k.bracket(alpha.a.col(i), alpha.a.col(j)));
  return f;
}

TwoFormValued phi_of_real_form(const LieAlgebra& k, const Realification& nr,
                               const Mat& w) {
  for (std::size_t r = 0; r < w.rows(); ++r)
    for (std::size_t c = 0; c < w.cols(); ++c)
      if (!w(r, c).is_real())
        fail(ErrorKind::Input,
             "connection form entry (" + std::to_string(r) + ", " +
                 std::to_string(c) + ") is not real: " + w(r, c).str());
  return phi(k, real_to_antiholomorphic(w, nr));
}

C0Report c0_membership(const HomomorphismDatum& datum, const Realification& nr,
                       const Mat& omega, bool exact_mode, double eps) {
  C0Report rep;
  rep.value = phi_of_real_form(datum.k, nr, omega);
  rep.exact = exact_mode && omega.all_exact();
  if (rep.exact) {
    rep.member = rep.value.exact_zero();
    rep.residual = rep.member ? 0.0 : rep.value.max_abs();
  } else {
    rep.residual = rep.value.max_abs();
    rep.member = rep.residual <= eps;
  }
  return rep;
}

TwoFormValued algebraic_curvature02(const HomomorphismDatum& datum,
                                    const AntiHolMap& omega01,
                                    const DbarCertificate& cert) {
  if (!cert.pass(cert.eps))
    fail(ErrorKind::Construction,
         "the derivative term of the obstruction is not certified to vanish; "
         "F^{0,2} = phi(omega^{0,1}) does not hold");
  TwoFormValued f = phi(datum.k, omega01);
  if (cert.vacuous && !f.comps.empty())
    fail(ErrorKind::Internal, "vacuous certificate on a space with 2-forms");
  return f;
}

}  // namespace invconn
