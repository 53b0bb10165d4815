#include "numeric_check.hpp"

#include "errors.hpp"
#include "obstruction.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace invconn {

Eigen::VectorXd GaugeField::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXd r(static_cast<Eigen::Index>(target_dim));
  for (std::size_t j = 0; j < target_dim; ++j) {
    std::size_t u = j % domain_dim, v = (j + 1) % domain_dim;
    double xu = x(static_cast<Eigen::Index>(u));
    double xv = x(static_cast<Eigen::Index>(v));
    r(static_cast<Eigen::Index>(j)) = lin * xu + cub * xu * xu * xu * xv;
  }
  return r;
}

Eigen::VectorXd GaugeField::partial(const Eigen::VectorXd& x,
                                    std::size_t mu) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(target_dim));
  for (std::size_t j = 0; j < target_dim; ++j) {
    std::size_t u = j % domain_dim, v = (j + 1) % domain_dim;
    double xu = x(static_cast<Eigen::Index>(u));
    double xv = x(static_cast<Eigen::Index>(v));
    double d = 0.0;
    if (mu == u) d += lin + 3.0 * cub * xu * xu * xv;
    if (mu == v) d += cub * xu * xu * xu;
    r(static_cast<Eigen::Index>(j)) = d;
  }
  return r;
}

std::vector<Eigen::VectorXd> sample_grid(std::size_t dim, std::size_t per_axis,
                                         double half_width, std::size_t cap) {
  if (dim == 0 || per_axis == 0 || cap == 0)
    fail(ErrorKind::Input, "empty sampling grid requested");
  long double total_ld = 1.0L;
  for (std::size_t a = 0; a < dim; ++a) total_ld *= per_axis;
  if (total_ld > 1e15L)
    fail(ErrorKind::Unsupported, "sampling lattice too large to enumerate");
  unsigned long long total = static_cast<unsigned long long>(total_ld);
  unsigned long long stride = total > cap ? (total + cap - 1) / cap : 1;

  std::vector<Eigen::VectorXd> pts;
  std::vector<std::size_t> idx(dim, 0);
  double step =
      per_axis > 1 ? 2.0 * half_width / static_cast<double>(per_axis - 1) : 0.0;
  for (unsigned long long i = 0; i < total; ++i) {
    if (i % stride == 0) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(dim));
      for (std::size_t a = 0; a < dim; ++a)
        x(static_cast<Eigen::Index>(a)) =
            per_axis > 1 ? -half_width + step * static_cast<double>(idx[a])
                         : 0.0;
      pts.push_back(std::move(x));
    }
    for (std::size_t a = dim; a-- > 0;) {
      if (++idx[a] < per_axis) break;
      idx[a] = 0;
    }
  }
  return pts;
}

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// sum_k (-ad_r)^k v / (k+1)!  (coordinate-space version of dexp_right)
Eigen::VectorXd dexp_coords(const Eigen::MatrixXd& adr,
                            const Eigen::VectorXd& v) {
  Eigen::VectorXd acc = v, term = v;
  for (int k = 1; k < 60; ++k) {
    term = (-adr * term) / static_cast<double>(k + 1);
    acc += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return acc;
}

// Ambient frame for a matrix model: basis matrices for the realified n and
// for k(S), plus a prefactored least-squares split of an ambient matrix into
// coordinates over that combined real span.
struct ModelFrame {
  std::size_t amb = 0, nd = 0, sd = 0;
  bool n_complex = false;
  std::vector<CMat> nb, sb;
  Eigen::MatrixXd basis_cols;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;

  ModelFrame(const SemidirectSum& g, const MatrixGroupModel& model) {
    amb = model.ambient;
    nd = g.n_dim;
    sd = g.s_dim;
    if (model.n_basis.size() == nd)
      n_complex = false;
    else if (2 * model.n_basis.size() == nd)
      n_complex = true;
    else
      fail(ErrorKind::Input,
           "model n-basis size does not match the realified dimension");
    std::vector<Mat> comb = model.combined_real_basis(n_complex);
    for (std::size_t a = 0; a < nd; ++a) nb.push_back(comb[a].approx());
    for (std::size_t a = 0; a < sd; ++a) sb.push_back(comb[nd + a].approx());

    const Eigen::Index m2 = static_cast<Eigen::Index>(amb * amb);
    basis_cols.resize(2 * m2, static_cast<Eigen::Index>(nd + sd));
    for (std::size_t a = 0; a < nd + sd; ++a) {
      const CMat& b = a < nd ? nb[a] : sb[a - nd];
      CVec v = Eigen::Map<const CVec>(b.data(), m2);
      basis_cols.col(static_cast<Eigen::Index>(a)).head(m2) = v.real();
      basis_cols.col(static_cast<Eigen::Index>(a)).tail(m2) = v.imag();
    }
    qr.compute(basis_cols);
  }

  Eigen::VectorXd split(const CMat& w, double* residual) const {
    const Eigen::Index m2 = static_cast<Eigen::Index>(amb * amb);
    Eigen::VectorXd rhs(2 * m2);
    CVec v = Eigen::Map<const CVec>(w.data(), m2);
    rhs.head(m2) = v.real();
    rhs.tail(m2) = v.imag();
    Eigen::VectorXd c = qr.solve(rhs);
    if (residual != nullptr) {
      double r = (basis_cols * c - rhs).cwiseAbs().maxCoeff();
      *residual = std::max(*residual, r);
    }
    return c;
  }

  CVec n_coords_complex(const Eigen::VectorXd& u) const {
    if (!n_complex) return u.cast<std::complex<double>>();
    std::size_t cn = nd / 2;
    CVec z(static_cast<Eigen::Index>(cn));
    for (std::size_t j = 0; j < cn; ++j)
      z(static_cast<Eigen::Index>(j)) =
          std::complex<double>(u(static_cast<Eigen::Index>(j)),
                               u(static_cast<Eigen::Index>(cn + j)));
    return z;
  }

  CMat n_element(const Eigen::VectorXd& u) const {
    CMat m = CMat::Zero(static_cast<Eigen::Index>(amb),
                        static_cast<Eigen::Index>(amb));
    for (std::size_t a = 0; a < nd; ++a)
      m += u(static_cast<Eigen::Index>(a)) * nb[a];
    return m;
  }

  CMat s_element(const Eigen::VectorXd& xi) const {
    CMat m = CMat::Zero(static_cast<Eigen::Index>(amb),
                        static_cast<Eigen::Index>(amb));
    for (std::size_t a = 0; a < sd; ++a)
      m += xi(static_cast<Eigen::Index>(a)) * sb[a];
    return m;
  }

  // Connection coefficients at x: column mu holds the k(S)-coordinates of
  // sigma^{-1} d_mu sigma for sigma(x) = exp_n(x) exp_s(rho(x)).
  Eigen::MatrixXd form_at(const MatrixGroupModel& model, const GaugeField& rho,
                          const Eigen::VectorXd& x, double* residual) const {
    Eigen::VectorXd r = rho.value(x);
    CMat rmat = s_element(r);
    CMat m = model.exp_s(r);
    CMat minv = expm(-rmat);
    CMat umat = n_element(x);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(sd),
                      static_cast<Eigen::Index>(nd));
    for (std::size_t mu = 0; mu < nd; ++mu) {
      CMat horiz = minv * dexp_right(umat, nb[mu]) * m;
      CMat vert = dexp_right(rmat, s_element(rho.partial(x, mu)));
      Eigen::VectorXd coords = split(horiz + vert, residual);
      a.col(static_cast<Eigen::Index>(mu)) =
          coords.tail(static_cast<Eigen::Index>(sd));
    }
    return a;
  }
};

// ad matrices of the s-block of the sum, restricted to s-coordinates.
std::vector<Eigen::MatrixXd> s_ad_basis(const SemidirectSum& g) {
  std::vector<Eigen::MatrixXd> ads(g.s_dim);
  for (std::size_t i = 0; i < g.s_dim; ++i) {
    ads[i] = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.s_dim),
                                   static_cast<Eigen::Index>(g.s_dim));
    for (std::size_t j = 0; j < g.s_dim; ++j) {
      Vec br = g.p.bracket_basis(g.n_dim + i, g.n_dim + j);
      for (std::size_t kk = 0; kk < g.s_dim; ++kk)
        ads[i](static_cast<Eigen::Index>(kk), static_cast<Eigen::Index>(j)) =
            br[g.n_dim + kk].approx().real();
    }
  }
  return ads;
}

Eigen::VectorXd s_bracket(const std::vector<Eigen::MatrixXd>& ads,
                          const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != 0.0) r += a(i) * (ads[static_cast<std::size_t>(i)] * b);
  return r;
}

void check_gauge_shape(const GaugeField& rho, std::size_t dom,
                       std::size_t tgt) {
  if (rho.domain_dim != dom || rho.target_dim != tgt)
    fail(ErrorKind::Input, "gauge field shaped " +
                               std::to_string(rho.domain_dim) + " -> " +
                               std::to_string(rho.target_dim) + ", expected " +
                               std::to_string(dom) + " -> " +
                               std::to_string(tgt));
}

}  // namespace

FlatnessReport tautological_flatness(const SemidirectSum& g,
                                     const MatrixGroupModel& model,
                                     const GaugeField& rho,
                                     const std::vector<Eigen::VectorXd>& pts,
                                     double h) {
  check_gauge_shape(rho, g.n_dim, g.s_dim);
  if (h <= 0.0) fail(ErrorKind::Input, "difference step must be positive");
  ModelFrame frame(g, model);
  std::vector<Eigen::MatrixXd> ads = s_ad_basis(g);

  FlatnessReport rep;
  rep.h = h;
  rep.points = pts.size();
  for (const Eigen::VectorXd& x : pts) {
    Eigen::MatrixXd a0 = frame.form_at(model, rho, x, &rep.split_residual);
    // one shifted evaluation per (direction, sign), shared across all pairs
    std::vector<Eigen::MatrixXd> plus(g.n_dim), minus(g.n_dim);
    for (std::size_t mu = 0; mu < g.n_dim; ++mu) {
      Eigen::VectorXd xp = x, xm = x;
      xp(static_cast<Eigen::Index>(mu)) += h;
      xm(static_cast<Eigen::Index>(mu)) -= h;
      plus[mu] = frame.form_at(model, rho, xp, &rep.split_residual);
      minus[mu] = frame.form_at(model, rho, xm, &rep.split_residual);
    }
    for (std::size_t mu = 0; mu + 1 < g.n_dim; ++mu)
      for (std::size_t nu = mu + 1; nu < g.n_dim; ++nu) {
        Eigen::VectorXd da =
            (plus[mu].col(static_cast<Eigen::Index>(nu)) -
             minus[mu].col(static_cast<Eigen::Index>(nu)) -
             plus[nu].col(static_cast<Eigen::Index>(mu)) +
             minus[nu].col(static_cast<Eigen::Index>(mu))) /
            (2.0 * h);
        Eigen::VectorXd f =
            da + s_bracket(ads, a0.col(static_cast<Eigen::Index>(mu)),
                           a0.col(static_cast<Eigen::Index>(nu)));
        rep.max_residual = std::max(rep.max_residual, f.cwiseAbs().maxCoeff());
      }
  }
  return rep;
}

ConvergenceProbe flatness_convergence(const SemidirectSum& g,
                                      const MatrixGroupModel& model,
                                      const GaugeField& rho,
                                      const std::vector<Eigen::VectorXd>& pts,
                                      double h) {
  ConvergenceProbe p;
  p.h = h;
  p.coarse = tautological_flatness(g, model, rho, pts, h).max_residual;
  p.fine = tautological_flatness(g, model, rho, pts, h / 2.0).max_residual;
  p.ratio = p.fine > 0.0 ? p.coarse / p.fine : 0.0;
  return p;
}

InvarianceReport tautological_invariance(const SemidirectSum& g,
                                         const MatrixGroupModel& model,
                                         const GaugeField& rho,
                                         std::size_t samples, double h,
                                         std::uint64_t seed) {
  check_gauge_shape(rho, g.n_dim, g.s_dim);
  ModelFrame frame(g, model);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.3, 0.3);

  auto section = [&](const Eigen::VectorXd& x) -> CMat {
    return model.exp_n(frame.n_coords_complex(x)) * model.exp_s(rho.value(x));
  };
  // base-point image of x under left translation by (u0, xi0)
  auto translate = [&](const CMat& en0, const CMat& es0, const CMat& es0inv,
                       const Eigen::VectorXd& x) -> Eigen::VectorXd {
    CMat moved =
        en0 * es0 * model.exp_n(frame.n_coords_complex(x)) * es0inv;
    CMat logn = logm_unipotent(moved);
    double res = 0.0;
    Eigen::VectorXd c = frame.split(logn, &res);
    if (res > 1e-8)
      fail(ErrorKind::Numeric,
           "translated point left the model of N (defect " +
               std::to_string(res) + ")");
    return c.head(static_cast<Eigen::Index>(g.n_dim));
  };

  InvarianceReport rep;
  rep.samples = samples;
  double split_res = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(g.n_dim));
    Eigen::VectorXd u0(static_cast<Eigen::Index>(g.n_dim));
    Eigen::VectorXd xi0(static_cast<Eigen::Index>(g.s_dim));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = dist(rng);
    for (Eigen::Index i = 0; i < u0.size(); ++i) u0(i) = dist(rng);
    for (Eigen::Index i = 0; i < xi0.size(); ++i) xi0(i) = dist(rng);

    CMat en0 = model.exp_n(frame.n_coords_complex(u0));
    CMat es0 = model.exp_s(xi0);
    CMat es0inv = model.exp_s(-xi0);
    CMat gmat = en0 * es0;

    Eigen::VectorXd tx = translate(en0, es0, es0inv, x);
    Eigen::MatrixXd a_here = frame.form_at(model, rho, x, &split_res);
    Eigen::MatrixXd a_there = frame.form_at(model, rho, tx, &split_res);

    CMat sig_x = section(x);
    CMat sig_tx = section(tx);
    CMat c = sig_tx.inverse() * gmat * sig_x;
    CMat cinv = c.inverse();

    for (std::size_t mu = 0; mu < g.n_dim; ++mu) {
      Eigen::VectorXd xp = x, xm = x;
      xp(static_cast<Eigen::Index>(mu)) += h;
      xm(static_cast<Eigen::Index>(mu)) -= h;
      Eigen::VectorXd txp = translate(en0, es0, es0inv, xp);
      Eigen::VectorXd txm = translate(en0, es0, es0inv, xm);
      // differential of the base translation
      Eigen::VectorXd dtau = (txp - txm) / (2.0 * h);
      Eigen::VectorXd pulled =
          a_there * dtau;  // k(S)-coordinates of A(tau x)(d tau e_mu)
      CMat conj = cinv * frame.s_element(pulled) * c;
      Eigen::VectorXd adc = frame.split(conj, &split_res)
                                .tail(static_cast<Eigen::Index>(g.s_dim));
      // the cocycle itself moves with the point: both sigma factors shift
      CMat cp = section(txp).inverse() * gmat * section(xp);
      CMat cm = section(txm).inverse() * gmat * section(xm);
      CMat dc = (cp - cm) / (2.0 * h);
      Eigen::VectorXd dcc = frame.split(cinv * dc, &split_res)
                                .tail(static_cast<Eigen::Index>(g.s_dim));
      Eigen::VectorXd lhs = a_here.col(static_cast<Eigen::Index>(mu));
      rep.max_residual = std::max(
          rep.max_residual, (lhs - adc - dcc).cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

namespace {

// ad matrices of the basis, converted to doubles once; building these goes
// through exact bracket arithmetic, so keep it out of per-point loops.
std::vector<Eigen::MatrixXd> ad_table(const LieAlgebra& k) {
  std::vector<Eigen::MatrixXd> adk(k.dim());
  for (std::size_t i = 0; i < k.dim(); ++i)
    adk[i] = k.ad(k.basis_vector(i)).approx().real();
  return adk;
}

Eigen::MatrixXd ad_of(const std::vector<Eigen::MatrixXd>& adk,
                      const Eigen::VectorXd& v) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(adk[0].rows(), adk[0].cols());
  for (std::size_t i = 0; i < adk.size(); ++i)
    m += v(static_cast<Eigen::Index>(i)) * adk[i];
  return m;
}

Eigen::MatrixXd gauged_form_with(const std::vector<Eigen::MatrixXd>& adk,
                                 const Eigen::MatrixXd& w,
                                 const GaugeField& rho,
                                 const Eigen::VectorXd& x) {
  Eigen::MatrixXd adr = ad_of(adk, rho.value(x));
  Eigen::MatrixXd e = expm(-adr.cast<std::complex<double>>()).real();
  Eigen::MatrixXd a(w.rows(), w.cols());
  for (Eigen::Index mu = 0; mu < w.cols(); ++mu)
    a.col(mu) = e * w.col(mu) +
                dexp_coords(adr, rho.partial(x, static_cast<std::size_t>(mu)));
  return a;
}

}  // namespace

Eigen::MatrixXd pair_gauged_form(const LieAlgebra& k, const Eigen::MatrixXd& w,
                                 const GaugeField& rho,
                                 const Eigen::VectorXd& x) {
  check_gauge_shape(rho, static_cast<std::size_t>(w.cols()), k.dim());
  return gauged_form_with(ad_table(k), w, rho, x);
}

Eigen::MatrixXd pair_ungauge_form(const LieAlgebra& k, const Eigen::MatrixXd& a,
                                  const GaugeField& rho,
                                  const Eigen::VectorXd& x) {
  check_gauge_shape(rho, static_cast<std::size_t>(a.cols()), k.dim());
  std::vector<Eigen::MatrixXd> adk = ad_table(k);
  Eigen::MatrixXd adr = ad_of(adk, rho.value(x));
  Eigen::MatrixXd e = expm(adr.cast<std::complex<double>>()).real();
  Eigen::MatrixXd w(a.rows(), a.cols());
  for (Eigen::Index mu = 0; mu < a.cols(); ++mu)
    w.col(mu) =
        e * (a.col(mu) -
             dexp_coords(adr, rho.partial(x, static_cast<std::size_t>(mu))));
  return w;
}

PairCurvatureReport pair_curvature(const LieAlgebra& k, const Realification& nr,
                                   const Mat& omega, const GaugeField& rho,
                                   const std::vector<Eigen::VectorXd>& pts,
                                   double h) {
  const std::size_t kd = k.dim();
  const std::size_t n2 = omega.cols();
  if (n2 != nr.real.dim() || n2 % 2 != 0)
    fail(ErrorKind::Input, "omega must have one column per realified basis "
                           "vector");
  const std::size_t cn = n2 / 2;
  check_gauge_shape(rho, n2, kd);
  if (omega.rows() != kd)
    fail(ErrorKind::Input, "omega has " + std::to_string(omega.rows()) +
                               " rows, dim k is " + std::to_string(kd));

  Eigen::MatrixXcd wc_full = omega.approx();
  if (wc_full.imag().cwiseAbs().maxCoeff() > 0.0)
    fail(ErrorKind::Input, "omega must be real in k-coordinates");
  Eigen::MatrixXd w = wc_full.real();

  std::vector<Eigen::MatrixXd> adk = ad_table(k);
  auto adv = [&](const Eigen::VectorXd& v) { return ad_of(adk, v); };

  // complex-structure action on basis indices: J e_a = jsgn[a] * e_jidx[a]
  std::vector<std::size_t> jidx(n2);
  std::vector<double> jsgn(n2);
  Eigen::MatrixXd jm = nr.j.approx().real();
  for (std::size_t a = 0; a < n2; ++a) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < n2; ++r) {
      double e = jm(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a));
      if (e != 0.0) {
        jidx[a] = r;
        jsgn[a] = e;
        ++hits;
      }
    }
    if (hits != 1)
      fail(ErrorKind::Internal, "complex structure is not a signed "
                                "permutation of the realified basis");
  }

  // algebraic references: full curvature [w e_mu, w e_nu] and the quadratic
  // term on the antilinear part
  Eigen::MatrixXcd w01(static_cast<Eigen::Index>(kd),
                       static_cast<Eigen::Index>(cn));
  for (std::size_t j = 0; j < cn; ++j)
    w01.col(static_cast<Eigen::Index>(j)) =
        0.5 * (w.col(static_cast<Eigen::Index>(j)) +
               std::complex<double>(0.0, 1.0) *
                   w.col(static_cast<Eigen::Index>(cn + j)));

  PairCurvatureReport rep;
  rep.h = h;
  rep.points = pts.size();
  const std::size_t pairs = n2 * (n2 - 1) / 2;

  for (const Eigen::VectorXd& x : pts) {
    Eigen::MatrixXd a0 = gauged_form_with(adk, w, rho, x);
    std::vector<Eigen::MatrixXd> plus(n2), minus(n2);
    for (std::size_t mu = 0; mu < n2; ++mu) {
      Eigen::VectorXd xp = x, xm = x;
      xp(static_cast<Eigen::Index>(mu)) += h;
      xm(static_cast<Eigen::Index>(mu)) -= h;
      plus[mu] = gauged_form_with(adk, w, rho, xp);
      minus[mu] = gauged_form_with(adk, w, rho, xm);
    }
    Eigen::MatrixXd eback =
        expm(adv(rho.value(x)).cast<std::complex<double>>()).real();

    std::vector<Eigen::VectorXd> f(pairs);
    for (std::size_t mu = 0; mu + 1 < n2; ++mu)
      for (std::size_t nu = mu + 1; nu < n2; ++nu) {
        Eigen::VectorXd da =
            (plus[mu].col(static_cast<Eigen::Index>(nu)) -
             minus[mu].col(static_cast<Eigen::Index>(nu)) -
             plus[nu].col(static_cast<Eigen::Index>(mu)) +
             minus[nu].col(static_cast<Eigen::Index>(mu))) /
            (2.0 * h);
        Eigen::VectorXd fc =
            da + adv(a0.col(static_cast<Eigen::Index>(mu))) *
                     a0.col(static_cast<Eigen::Index>(nu));
        std::size_t id = TwoFormValued::pair_index(mu, nu, n2);
        f[id] = eback * fc;  // gauge the curvature back before comparing
        Eigen::VectorXd alg = adv(w.col(static_cast<Eigen::Index>(mu))) *
                              w.col(static_cast<Eigen::Index>(nu));
        rep.max_total_gap =
            std::max(rep.max_total_gap, (f[id] - alg).cwiseAbs().maxCoeff());
      }

    // antisymmetric lookup with signs
    auto flook = [&](std::size_t a, std::size_t b) -> Eigen::VectorXd {
      if (a == b) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(kd));
      if (a < b) return f[TwoFormValued::pair_index(a, b, n2)];
      return -f[TwoFormValued::pair_index(b, a, n2)];
    };
    for (std::size_t i = 0; i + 1 < cn; ++i)
      for (std::size_t j = i + 1; j < cn; ++j) {
        Eigen::VectorXd fij = flook(i, j);
        Eigen::VectorXd fJiJj = jsgn[i] * jsgn[j] * flook(jidx[i], jidx[j]);
        Eigen::VectorXd fJij = jsgn[i] * flook(jidx[i], j);
        Eigen::VectorXd fiJj = jsgn[j] * flook(i, jidx[j]);
        Eigen::VectorXcd f02 =
            0.25 * ((fij - fJiJj).cast<std::complex<double>>() +
                    std::complex<double>(0.0, 1.0) *
                        (fJij + fiJj).cast<std::complex<double>>());
        rep.max_f02 = std::max(rep.max_f02, f02.cwiseAbs().maxCoeff());
        Eigen::VectorXcd quad = Eigen::VectorXcd::Zero(
            static_cast<Eigen::Index>(kd));
        for (std::size_t t = 0; t < kd; ++t)
          quad += w01(static_cast<Eigen::Index>(t),
                      static_cast<Eigen::Index>(i)) *
                  (adk[t].cast<std::complex<double>>() *
                   w01.col(static_cast<Eigen::Index>(j)));
        rep.max_f02_gap =
            std::max(rep.max_f02_gap, (f02 - quad).cwiseAbs().maxCoeff());
      }
    for (std::size_t a = 0; a + 1 < n2; ++a)
      for (std::size_t b = a + 1; b < n2; ++b) {
        Eigen::VectorXd f11 =
            0.5 * (flook(a, b) + jsgn[a] * jsgn[b] * flook(jidx[a], jidx[b]));
        rep.max_f11 = std::max(rep.max_f11, f11.cwiseAbs().maxCoeff());
      }
  }
  return rep;
}

}  // namespace invconn
