#include "weights.hpp"

#include "errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>

namespace invconn {

namespace {

// Projector onto span(basis), orthogonal with respect to the hermitian form
// x^* G y.  Distinct eigenblocks of a G-hermitian operator are G-orthogonal,
// so these projectors sum to the identity when the blocks exhaust the space.
Eigen::MatrixXcd form_projector(const std::vector<Vec>& basis,
                                const Eigen::MatrixXd& g) {
  const Eigen::Index n = g.rows();
  Eigen::MatrixXcd b(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    b.col(static_cast<Eigen::Index>(j)) = vec_approx(basis[j]);
  Eigen::MatrixXcd gc = g.cast<std::complex<double>>();
  Eigen::MatrixXcd gram = b.adjoint() * gc * b;
  return b * gram.inverse() * b.adjoint() * gc;
}

}  // namespace

const std::vector<Vec>* IsotypicalDecomposition::block_of(long w) const {
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] == w) return &blocks[i];
  return nullptr;
}

std::size_t IsotypicalDecomposition::total_dim() const {
  std::size_t t = 0;
  for (const auto& b : blocks) t += b.size();
  return t;
}

IsotypicalDecomposition isotypical_decompose(const LieAlgebra& k,
                                             const Vec& dbeta_zeta,
                                             bool exact_mode, double snap_tol) {
  if (dbeta_zeta.size() != k.dim())
    fail(ErrorKind::Input, "circle generator has " +
                               std::to_string(dbeta_zeta.size()) +
                               " coordinates, algebra has dimension " +
                               std::to_string(k.dim()));
  const std::size_t d = k.dim();
  Mat ad = k.ad(dbeta_zeta);

  // -i * ad is hermitian for the form x^* G y, so a Cholesky change of frame
  // M = L^T A L^{-T} hands the problem to a self-adjoint solver.
  AdInvariantForm form = invariant_form(k);
  Eigen::MatrixXd g = form.gram.approx().real();
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    fail(ErrorKind::Numeric,
         "invariant form is not positive definite; cannot split into weight "
         "blocks");
  Eigen::MatrixXd l = llt.matrixL();
  Eigen::MatrixXcd a =
      std::complex<double>(0.0, -1.0) * ad.approx();
  Eigen::MatrixXcd lc = l.cast<std::complex<double>>();
  // A L^{-T} via a triangular solve of the transposed system.
  Eigen::MatrixXcd al =
      lc.triangularView<Eigen::Lower>().solve(a.transpose()).transpose();
  Eigen::MatrixXcd m = lc.transpose() * al;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::Numeric, "weight eigensolve did not converge");

  // Eigenvalues of -i*ad are the weights; the circle only closes when they
  // are integers, so anything else is an input we refuse to snap.
  std::map<long, std::vector<Vec>, std::greater<long>> grouped;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
    double w = es.eigenvalues()(j);
    long wi = std::lround(w);
    if (std::abs(w - static_cast<double>(wi)) > snap_tol) {
      std::ostringstream os;
      os << "weight " << w << " of the central circle action is not an "
         << "integer (tolerance " << snap_tol << ")";
      fail(ErrorKind::Numeric, os.str());
    }
    if (!exact_mode) {
      Eigen::VectorXcd u = es.eigenvectors().col(j);
      Eigen::VectorXcd v =
          lc.transpose().triangularView<Eigen::Upper>().solve(u);
      grouped[wi].push_back(vec_from_approx(v));
    } else {
      grouped[wi];  // candidates only; bases come from exact kernels below
    }
  }

  IsotypicalDecomposition dec;
  dec.op = ad;
  dec.exact = exact_mode && ad.all_exact();

  if (exact_mode) {
    for (auto& [w, block] : grouped) {
      Mat shift = ad;
      Scalar iw = Scalar::i() * Scalar(Rational(w));
      for (std::size_t r = 0; r < d; ++r) shift(r, r) -= iw;
      block = kernel_basis(shift, true, snap_tol);
    }
    std::size_t total = 0;
    for (const auto& [w, block] : grouped) total += block.size();
    if (total != d)
      fail(ErrorKind::Numeric,
           "weight blocks span " + std::to_string(total) + " of " +
               std::to_string(d) +
               " dimensions; ad of the circle generator is not semisimple "
               "over the candidate integer weights");
  }

  for (auto& [w, block] : grouped) {
    if (block.empty()) continue;
    dec.weights.push_back(w);
    dec.blocks.push_back(std::move(block));
  }

  Eigen::MatrixXcd psum = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                                 static_cast<Eigen::Index>(d));
  for (const auto& block : dec.blocks) psum += form_projector(block, g);
  psum -= Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(d),
                                     static_cast<Eigen::Index>(d));
  dec.projector_sum_residual = psum.cwiseAbs().maxCoeff();
  return dec;
}

double weight_block_residual(const IsotypicalDecomposition& dec, long w,
                             const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::MatrixXcd ax = a.approx();
  const std::vector<Vec>* block = dec.block_of(w);
  if (block == nullptr) return ax.cwiseAbs().maxCoeff();

  Eigen::MatrixXcd q =
      orthonormal_basis(*block, static_cast<std::size_t>(ax.rows()));
  double res = 0.0;
  for (Eigen::Index c = 0; c < ax.cols(); ++c) {
    Eigen::VectorXcd col = ax.col(c);
    Eigen::VectorXcd rem = col - q * (q.adjoint() * col);
    res = std::max(res, rem.cwiseAbs().maxCoeff());
  }
  return res;
}

bool DbarCertificate::pass(double tol) const {
  if (vacuous) return true;
  return projector_sum_residual <= tol && omega_weight_residual <= tol;
}

std::string DbarCertificate::verdict() const {
  if (vacuous) return "vacuous";
  return pass(eps) ? "vanishes" : "inconclusive";
}

DbarCertificate dbar_vanishing_certificate(const HomomorphismDatum& datum,
                                           const AntiHolMap& omega01,
                                           bool exact_mode, double eps) {
  if (datum.weight_on_n == 0)
    fail(ErrorKind::Hypothesis,
         "central weight w0 = 0; the vanishing argument needs the circle to "
         "act on n with a nonzero scalar weight");
  if (omega01.a.rows() != datum.k.dim())
    fail(ErrorKind::Input,
         "omega^{0,1} has " + std::to_string(omega01.a.rows()) +
             " rows but k has dimension " + std::to_string(datum.k.dim()));

  Vec dz = datum.dbeta_of(datum.zeta);
  IsotypicalDecomposition dec = isotypical_decompose(datum.k, dz, exact_mode);

  DbarCertificate cert;
  cert.w0 = datum.weight_on_n;
  cert.dim_n = omega01.a.cols();
  cert.block_weights = dec.weights;
  for (const auto& b : dec.blocks) cert.block_dims.push_back(b.size());
  cert.projector_sum_residual = dec.projector_sum_residual;
  // Equivariance pins omega^{0,1} to the (-w0) block; leakage outside it
  // would void the weight count (-w0) - (-2*w0) = w0 != 0.
  cert.omega_weight_residual =
      weight_block_residual(dec, -datum.weight_on_n, omega01.a);
  cert.vacuous = cert.dim_n == 1;
  cert.exact = dec.exact && omega01.a.all_exact();
  cert.eps = eps;
  return cert;
}

}  // namespace invconn
