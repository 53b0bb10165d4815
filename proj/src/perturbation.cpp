#include "perturbation.hpp"

#include <algorithm>
#include <random>

namespace invconn {

Vec PerturbationSpace::vectorize(const Mat& w) const {
  const std::size_t kd = k.dim(), nd = n_real.real.dim();
  Vec v(kd * nd);
  for (std::size_t b = 0; b < nd; ++b)
    for (std::size_t a = 0; a < kd; ++a) v[b * kd + a] = w(a, b);
  return v;
}

Mat PerturbationSpace::unvectorize(const Vec& v) const {
  const std::size_t kd = k.dim(), nd = n_real.real.dim();
  Mat w(kd, nd);
  for (std::size_t b = 0; b < nd; ++b)
    for (std::size_t a = 0; a < kd; ++a) w(a, b) = v[b * kd + a];
  return w;
}

void HomomorphismDatum::validate(const DerivationAction& ks_on_n,
                                 double eps) const {
  if (dbeta.rows() != k.dim() || dbeta.cols() != ks.dim())
    fail(ErrorKind::Input, "dbeta has wrong shape");
  if (zeta.size() != ks.dim()) fail(ErrorKind::Input, "zeta has wrong length");
  if (weight_on_n == 0)
    fail(ErrorKind::Input, "declared circle weight on n must be nonzero");

  auto small = [&](const Vec& v) {
    return vec_is_zero(v) || vec_max_abs(v) <= eps;
  };
  for (std::size_t a = 0; a < ks.dim(); ++a)
    for (std::size_t b = a + 1; b < ks.dim(); ++b) {
      Vec lhs = dbeta.apply(ks.bracket_basis(a, b));
      Vec rhs = k.bracket(dbeta.col(a), dbeta.col(b));
      if (!small(vec_sub(lhs, rhs)))
        fail(ErrorKind::Construction,
             "dbeta is not a Lie algebra homomorphism on basis pair (" +
                 std::to_string(a) + "," + std::to_string(b) + ")");
    }
  for (std::size_t a = 0; a < ks.dim(); ++a)
    if (!small(ks.bracket(zeta, ks.basis_vector(a))))
      fail(ErrorKind::Construction, "zeta is not central in k(S)");

  // The central circle must act on n as the single character i * w0.
  Mat a = ks_on_n.act_of(zeta);
  Mat want = Mat::identity(ks_on_n.n.dim())
                 .scaled(Scalar::i() * Scalar(weight_on_n));
  Mat r = a - want;
  if (!(r.all_exact() && r.max_abs() == 0.0) && r.max_abs() > eps) {
    std::string diag;
    Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(
                              a.approx())
                              .eigenvalues();
    for (Eigen::Index t = 0; t < ev.size(); ++t)
      diag += (t ? "," : "") + std::to_string(ev(t).imag());
    fail(ErrorKind::Hypothesis,
         "central circle does not act on n as the single scalar character i*" +
             std::to_string(weight_on_n) +
             " (eigenvalue imaginary parts: " + diag + ")");
  }
}

Mat apply_action(const HomomorphismDatum& datum, const DerivationAction& d,
                 const Realification& nr, const Vec& xi, const Mat& w) {
  Mat adb = datum.k.ad(datum.dbeta_of(xi));
  Mat actr = nr.embed_endo(d.act_of(xi));
  return adb * w - w * actr;
}

Mat action_operator(const HomomorphismDatum& datum, const DerivationAction& d,
                    const Realification& nr, const Vec& xi) {
  Mat adb = datum.k.ad(datum.dbeta_of(xi));
  Mat actr = nr.embed_endo(d.act_of(xi));
  const std::size_t kd = datum.k.dim(), nd = nr.real.dim();
  return kron(Mat::identity(nd), adb) - kron(actr.transpose(), Mat::identity(kd));
}

std::vector<Mat> invariant_subspace(const HomomorphismDatum& datum,
                                    const DerivationAction& d,
                                    const Realification& nr, bool exact_mode,
                                    double eps) {
  PerturbationSpace w{nr, datum.k};
  const std::size_t wd = w.dim(), m = datum.ks.dim();
  Mat stacked(m * wd, wd);
  for (std::size_t a = 0; a < m; ++a) {
    Mat op = action_operator(datum, d, nr, datum.ks.basis_vector(a));
    for (std::size_t i = 0; i < wd; ++i)
      for (std::size_t j = 0; j < wd; ++j) stacked(a * wd + i, j) = op(i, j);
  }
  std::vector<Vec> basis = kernel_basis(stacked, exact_mode, eps);
  std::vector<Mat> out;
  out.reserve(basis.size());
  for (const Vec& v : basis) out.push_back(w.unvectorize(v));
  return out;
}

AntiHolMap real_to_antiholomorphic(const Mat& w, const Realification& nr) {
  const std::size_t n = nr.complex_dim, kd = w.rows();
  if (w.cols() != 2 * n)
    fail(ErrorKind::Input, "real map has wrong domain dimension");
  Mat a(kd, n);
  Scalar half(Rational(1, 2));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t r = 0; r < kd; ++r)
      a(r, b) = half * (w(r, b) + Scalar::i() * w(r, n + b));
  return AntiHolMap{std::move(a)};
}

Mat antiholomorphic_to_real(const AntiHolMap& alpha, const Realification& nr) {
  const std::size_t n = nr.complex_dim, kd = alpha.a.rows();
  if (alpha.a.cols() != n)
    fail(ErrorKind::Input, "antiholomorphic map has wrong domain dimension");
  Mat w(kd, 2 * n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t r = 0; r < kd; ++r) {
      // omega(v) = alpha(v) + sigma(alpha(v)); on f_b and i f_b this reads:
      Scalar z = alpha.a(r, b);
      w(r, b) = z + z.conj();                          // 2 Re z
      Scalar zi = -Scalar::i() * z;                    // alpha(i f_b) coords
      w(r, n + b) = zi + zi.conj();
    }
  return w;
}

void CandidatePair::validate(const DerivationAction& d, const Realification& nr,
                             double eps) const {
  beta.validate(d, eps);
  if (omega.rows() != beta.k.dim() || omega.cols() != nr.real.dim())
    fail(ErrorKind::Input, "omega has wrong shape");
  for (std::size_t a = 0; a < beta.ks.dim(); ++a) {
    Mat r = apply_action(beta, d, nr, beta.ks.basis_vector(a), omega);
    if (!(r.all_exact() && r.max_abs() == 0.0) && r.max_abs() > eps)
      fail(ErrorKind::Construction,
           "omega is not invariant: action of basis vector " +
               std::to_string(a) + " leaves residual " +
               std::to_string(r.max_abs()));
  }
}

namespace {

// The joint tuple [dbeta | omega] whose columns K acts on through Ad.
Eigen::MatrixXd joint_tuple(const CandidatePair& p) {
  const std::size_t kd = p.beta.k.dim();
  const std::size_t cols = p.beta.dbeta.cols() + p.omega.cols();
  Eigen::MatrixXd t(kd, cols);
  t.leftCols(p.beta.dbeta.cols()) = p.beta.dbeta.approx().real();
  t.rightCols(p.omega.cols()) = p.omega.approx().real();
  return t;
}

// Coefficients of det(t I - M) by the Faddeev-LeVerrier recursion.  These
// carry the same information as the spectrum with multiplicities but are
// continuous in the entries: comparing sorted eigenvalue lists mispairs
// nearly-equal eigenvalues whose ordering flips under roundoff (for compact
// algebras the spectra sit on the imaginary axis, where a sort keyed on the
// real part is pure noise) and that manufactures an O(1) gap out of nothing.
std::vector<double> char_poly(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0;
  Eigen::MatrixXd aux = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    aux = m * aux;
    double ck = -aux.trace() / static_cast<double>(k);
    c[static_cast<std::size_t>(k)] = ck;
    aux += ck * Eigen::MatrixXd::Identity(n, n);
  }
  return c;
}

}  // namespace

EquivalenceResult equivalent_pairs(const CandidatePair& p1,
                                   const CandidatePair& p2,
                                   const EquivalenceOptions& opts) {
  const LieAlgebra& k = p1.beta.k;
  EquivalenceResult res;
  if (p2.beta.k.dim() != k.dim() || p2.beta.ks.dim() != p1.beta.ks.dim()) {
    fail(ErrorKind::Input, "pairs live over different algebras");
  }

  // --- Tier 1: Ad-invariant separators. ---------------------------------
  // The characteristic polynomial of ad(dbeta(xi_a)) is a conjugation
  // invariant; compare coefficients with a per-coefficient relative scale
  // since they grow like powers of the spectral radius.
  for (std::size_t a = 0; a < p1.beta.ks.dim(); ++a) {
    Eigen::MatrixXd m1 = p1.beta.k.ad(p1.beta.dbeta.col(a)).approx().real();
    Eigen::MatrixXd m2 = p2.beta.k.ad(p2.beta.dbeta.col(a)).approx().real();
    std::vector<double> s1 = char_poly(m1), s2 = char_poly(m2);
    double gap = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i)
      gap = std::max(gap, std::abs(s1[i] - s2[i]) /
                              std::max({1.0, std::abs(s1[i]),
                                        std::abs(s2[i])}));
    if (gap > opts.separator_tol) {
      res.verdict = EquivalenceVerdict::Inequivalent;
      res.separator = "characteristic polynomial of ad(dbeta) on basis "
                      "vector " + std::to_string(a);
      res.separation = gap;
      return res;
    }
  }
  // Gram matrix of the joint tuple under the Ad-invariant form.
  AdInvariantForm form = invariant_form(k);
  Eigen::MatrixXd g = form.gram.approx().real();
  Eigen::MatrixXd t1 = joint_tuple(p1), t2 = joint_tuple(p2);
  Eigen::MatrixXd gram1 = t1.transpose() * g * t1;
  Eigen::MatrixXd gram2 = t2.transpose() * g * t2;
  double gram_gap = (gram1 - gram2).cwiseAbs().maxCoeff();
  if (gram_gap > opts.separator_tol * std::max(1.0, gram1.cwiseAbs().maxCoeff())) {
    res.verdict = EquivalenceVerdict::Inequivalent;
    res.separator = "Gram invariants of (dbeta, omega) under the invariant form";
    res.separation = gram_gap;
    return res;
  }

  // --- Tier 2: orbit alignment. ------------------------------------------
  // Minimize |R t1 - t2|^2 over R in Ad(K) written as a product of
  // exponentials; each outer step solves the linearized least squares
  // min_d |[d, c_j] + (c_j - b_j)|^2 (Gauss-Newton, quadratic near a zero
  // residual) and multiplies exp(ad d) into R.
  const std::size_t kd = k.dim(), cols = t1.cols();
  std::vector<Eigen::MatrixXd> adb;
  for (std::size_t a = 0; a < kd; ++a)
    adb.push_back(k.ad_basis(a).approx().real());
  double scale = std::max({1.0, t1.cwiseAbs().maxCoeff(), t2.cwiseAbs().maxCoeff()});

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double best_err = std::numeric_limits<double>::infinity();
  std::vector<Vec> best_witness;

  for (std::size_t start = 0; start < opts.starts; ++start) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(kd);
    if (start > 0)
      for (std::size_t a = 0; a < kd; ++a) x0(a) = u(rng);
    Eigen::MatrixXd adx = Eigen::MatrixXd::Zero(kd, kd);
    for (std::size_t a = 0; a < kd; ++a) adx += x0(a) * adb[a];
    Eigen::MatrixXd r =
        expm(adx.cast<std::complex<double>>()).real();
    std::vector<Vec> witness;
    if (start > 0) witness.push_back(vec_from_approx(
        x0.cast<std::complex<double>>()));

    Eigen::MatrixXd cur = r * t1;
    double err = (cur - t2).norm();
    for (std::size_t it = 0; it < opts.iterations && err > opts.success_tol * scale;
         ++it) {
      Eigen::MatrixXd jac(kd * cols, kd);
      Eigen::VectorXd rhs(kd * cols);
      for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t a = 0; a < kd; ++a)
          jac.block(c * kd, a, kd, 1) = adb[a] * cur.col(c);
        rhs.segment(c * kd, kd) = t2.col(c) - cur.col(c);
      }
      Eigen::MatrixXd jtj = jac.transpose() * jac;
      jtj.diagonal().array() += 1e-12 * (1.0 + jtj.trace());
      Eigen::VectorXd d = jtj.ldlt().solve(jac.transpose() * rhs);
      if (!d.allFinite()) break;
      // Backtracking on the exponential update.
      double step = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 30; ++bt, step *= 0.5) {
        Eigen::MatrixXd add = Eigen::MatrixXd::Zero(kd, kd);
        for (std::size_t a = 0; a < kd; ++a) add += step * d(a) * adb[a];
        Eigen::MatrixXd rnew =
            expm(add.cast<std::complex<double>>()).real() * r;
        double enew = (rnew * t1 - t2).norm();
        if (enew < err) {
          r = rnew;
          cur = r * t1;
          err = enew;
          witness.push_back(vec_from_approx(
              (step * d).cast<std::complex<double>>()));
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (err < best_err) {
      best_err = err;
      best_witness = witness;
    }
    if (best_err <= opts.success_tol * scale) break;
  }

  if (best_err <= opts.success_tol * scale) {
    res.verdict = EquivalenceVerdict::Equivalent;
    res.witness = best_witness;
    res.witness_error = best_err;
    return res;
  }
  res.verdict = EquivalenceVerdict::Undecided;
  res.witness_error = best_err;
  return res;
}

}  // namespace invconn
