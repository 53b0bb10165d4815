#include "semidirect.hpp"

#include <random>

namespace invconn {

Mat DerivationAction::act_of(const Vec& xi) const {
  Mat m(n.dim(), n.dim());
  for (std::size_t a = 0; a < s.dim(); ++a) {
    if (xi[a].is_zero()) continue;
    m = m + act[a].scaled(xi[a]);
  }
  return m;
}

bool DerivationAction::is_trivial() const {
  for (const Mat& a : act)
    if (a.max_abs() != 0.0) return false;
  return true;
}

void DerivationAction::validate(double eps) const {
  if (act.size() != s.dim())
    fail(ErrorKind::Input, "need one action matrix per s-basis vector");
  for (const Mat& a : act)
    if (a.rows() != n.dim() || a.cols() != n.dim())
      fail(ErrorKind::Input, "action matrix has wrong shape");
  // Leibniz: act(xi)[x,y] = [act(xi)x, y] + [x, act(xi)y] on basis pairs.
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t i = 0; i < n.dim(); ++i)
      for (std::size_t j = i + 1; j < n.dim(); ++j) {
        Vec lhs = act[a].apply(n.bracket_basis(i, j));
        Vec rhs = vec_add(n.bracket(act[a].col(i), n.basis_vector(j)),
                          n.bracket(n.basis_vector(i), act[a].col(j)));
        Vec r = vec_sub(lhs, rhs);
        if (!vec_is_zero(r) && vec_max_abs(r) > eps)
          fail(ErrorKind::Construction,
               "action matrix " + std::to_string(a) +
                   " is not a derivation: Leibniz fails on basis pair (" +
                   std::to_string(i) + "," + std::to_string(j) + ")");
      }
  // Homomorphism: act([xi_a, xi_b]) = [act(xi_a), act(xi_b)].
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = a + 1; b < s.dim(); ++b) {
      Mat lhs = act_of(s.bracket_basis(a, b));
      Mat r = lhs - commutator(act[a], act[b]);
      if (!(r.all_exact() && r.max_abs() == 0.0) && r.max_abs() > eps)
        fail(ErrorKind::Construction,
             "action is not a homomorphism on s-basis pair (" +
                 std::to_string(a) + "," + std::to_string(b) + ")");
    }
}

SemidirectSum semidirect_sum(const LieAlgebra& n, const LieAlgebra& s,
                             const DerivationAction& d, double eps) {
  d.validate(eps);
  const LieAlgebra* np = &n;
  std::vector<Mat> act = d.act;
  LieAlgebra n_real;
  if (n.field() == Field::Complex && s.field() == Field::Real) {
    Realification r = realify(n);
    n_real = r.real;
    np = &n_real;
    for (Mat& a : act) a = r.embed_endo(a);
  } else if (n.field() != s.field()) {
    fail(ErrorKind::Input, "semidirect_sum: real n with complex s unsupported");
  }
  const std::size_t dn = np->dim(), ds = s.dim();
  std::vector<BracketTerm> table;
  for (const BracketTerm& t : np->table()) table.push_back(t);
  for (const BracketTerm& t : s.table())
    table.push_back({dn + t.i, dn + t.j, dn + t.k, t.c});
  // [xi_a, x_i] = act_a x_i; stored with the n index first, hence negated.
  for (std::size_t a = 0; a < ds; ++a)
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t k = 0; k < dn; ++k) {
        const Scalar& c = act[a](k, i);
        if (!c.is_zero()) table.push_back({i, dn + a, k, -c});
      }
  std::vector<std::string> labels;
  for (const auto& l : np->labels()) labels.push_back(l);
  for (const auto& l : s.labels()) labels.push_back(l + "'");
  SemidirectSum out;
  out.n_dim = dn;
  out.s_dim = ds;
  out.p = LieAlgebra::from_structure(n.name() + "+" + s.name(), s.field(),
                                     dn + ds, std::move(labels),
                                     std::move(table));
  return out;
}

IntegrabilityReport verify_horizontal_integrability(const LieAlgebra& p,
                                                    std::size_t n_dim) {
  if (n_dim > p.dim())
    fail(ErrorKind::Input, "candidate ideal larger than the algebra");
  IntegrabilityReport rep;
  auto scan = [&](std::size_t i, std::size_t j, bool closure) {
    Vec v = p.bracket_basis(i, j);
    double res = 0.0;
    for (std::size_t k = n_dim; k < p.dim(); ++k) {
      rep.exact &= v[k].exact();
      res = std::max(res, v[k].abs());
    }
    double& slot = closure ? rep.closure_residual : rep.ideal_residual;
    if (res > slot) {
      slot = res;
      if (res >= std::max(rep.closure_residual, rep.ideal_residual)) {
        rep.worst_pair[0] = i;
        rep.worst_pair[1] = j;
      }
    }
  };
  for (std::size_t i = 0; i < n_dim; ++i) {
    for (std::size_t j = i + 1; j < n_dim; ++j) scan(i, j, true);
    for (std::size_t j = n_dim; j < p.dim(); ++j) scan(i, j, false);
  }
  return rep;
}

std::vector<Mat> MatrixGroupModel::combined_real_basis(bool n_complex) const {
  std::vector<Mat> basis = n_basis;
  if (n_complex)
    for (const Mat& b : n_basis) basis.push_back(b.scaled(Scalar::i()));
  for (const Mat& b : s_basis) basis.push_back(b);
  return basis;
}

Eigen::MatrixXcd MatrixGroupModel::n_matrix(
    const Eigen::VectorXcd& coords) const {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(ambient, ambient);
  for (std::size_t a = 0; a < n_basis.size(); ++a)
    x += coords(a) * n_basis[a].approx();
  return x;
}

Eigen::MatrixXcd MatrixGroupModel::s_matrix(
    const Eigen::VectorXd& coords) const {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(ambient, ambient);
  for (std::size_t a = 0; a < s_basis.size(); ++a)
    x += coords(a) * s_basis[a].approx();
  return x;
}

Eigen::MatrixXcd MatrixGroupModel::exp_n(const Eigen::VectorXcd& coords) const {
  return expm(n_matrix(coords));
}

Eigen::MatrixXcd MatrixGroupModel::exp_s(const Eigen::VectorXd& coords) const {
  return expm(s_matrix(coords));
}

void MatrixGroupModel::validate(const SemidirectSum& g, double eps) const {
  const bool n_complex = 2 * n_basis.size() == g.n_dim;
  if (!n_complex && n_basis.size() != g.n_dim)
    fail(ErrorKind::Input, "model n-basis does not match the sum");
  if (s_basis.size() != g.s_dim)
    fail(ErrorKind::Input, "model s-basis does not match the sum");
  std::vector<Mat> basis = combined_real_basis(n_complex);
  const std::size_t dim = basis.size(), m = ambient;
  for (const Mat& b : basis)
    if (b.rows() != m || b.cols() != m)
      fail(ErrorKind::Input, "model matrix with wrong ambient size");

  // Exact commutator coordinates against the structure constants.
  Mat span(2 * m * m, dim);
  auto vectorize = [&](const Mat& x) {
    Vec v(2 * m * m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        v[r * m + c] = x(r, c).real_part();
        v[m * m + r * m + c] = x(r, c).imag_part();
      }
    return v;
  };
  for (std::size_t j = 0; j < dim; ++j) span.set_col(j, vectorize(basis[j]));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      auto coords = exact_solve(span, vectorize(commutator(basis[i], basis[j])));
      if (!coords)
        fail(ErrorKind::Construction,
             "model commutator leaves the spanned subalgebra at (" +
                 std::to_string(i) + "," + std::to_string(j) + ")");
      Vec want = g.p.bracket_basis(i, j);
      Vec r = vec_sub(*coords, want);
      if (!vec_is_zero(r) && vec_max_abs(r) > eps)
        fail(ErrorKind::Construction,
             "model structure constants disagree with the semidirect sum at (" +
                 std::to_string(i) + "," + std::to_string(j) + ")");
    }

  // Sampled eta-automorphism check: conjugation by exp(xi) must carry the
  // model of N to itself and agree with exp(act(xi)) on coordinates.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  const std::size_t dn = n_complex ? 2 * n_basis.size() : n_basis.size();
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::VectorXd xi(g.s_dim);
    for (std::size_t a = 0; a < g.s_dim; ++a) xi(a) = u(rng);
    Eigen::MatrixXcd gmat = exp_s(xi);
    Eigen::MatrixXcd ginv = gmat.inverse();
    // exp(act(xi)) on the realified coordinates of n.
    Eigen::MatrixXd actr = Eigen::MatrixXd::Zero(dn, dn);
    for (std::size_t a = 0; a < g.s_dim; ++a)
      for (std::size_t i = 0; i < dn; ++i)
        for (std::size_t k = 0; k < dn; ++k)
          actr(k, i) += xi(a) * (-g.p.bracket_basis(i, dn + a)[k].approx().real());
    Eigen::MatrixXd flow = expm(actr.cast<std::complex<double>>()).real();
    for (std::size_t i = 0; i < dn; ++i) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dn);
      e(i) = 1.0;
      Eigen::VectorXcd z(n_basis.size());
      for (std::size_t a = 0; a < n_basis.size(); ++a)
        z(a) = n_complex ? std::complex<double>(e(a).real() + 0.0,
                                                e(n_basis.size() + a).real())
                         : e(a);
      Eigen::MatrixXcd conj_img =
          gmat * expm(n_matrix(z)) * ginv;
      Eigen::VectorXd want = flow * e.real();
      Eigen::VectorXcd zw(n_basis.size());
      for (std::size_t a = 0; a < n_basis.size(); ++a)
        zw(a) = n_complex
                    ? std::complex<double>(want(a), want(n_basis.size() + a))
                    : std::complex<double>(want(a), 0.0);
      Eigen::MatrixXcd expect = expm(n_matrix(zw));
      if ((conj_img - expect).cwiseAbs().maxCoeff() > 1e-8)
        fail(ErrorKind::Construction,
             "conjugation by exp(s) does not realize exp(act) on the N model");
    }
  }
}

ConsistencyReport model_consistency(const SemidirectSum& g,
                                    const MatrixGroupModel& m,
                                    std::size_t samples, double h,
                                    std::uint64_t seed) {
  const bool n_complex = 2 * m.n_basis.size() == g.n_dim;
  std::vector<Mat> basis = m.combined_real_basis(n_complex);
  const std::size_t dim = basis.size();
  std::vector<Eigen::MatrixXcd> b;
  b.reserve(dim);
  for (const Mat& x : basis) b.push_back(x.approx());

  // Span projector for extracting coordinates of log results.
  Eigen::MatrixXd span(2 * m.ambient * m.ambient, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    Eigen::MatrixXcd x = b[j];
    for (std::size_t r = 0; r < m.ambient; ++r)
      for (std::size_t c = 0; c < m.ambient; ++c) {
        span(r * m.ambient + c, j) = x(r, c).real();
        span(m.ambient * m.ambient + r * m.ambient + c, j) = x(r, c).imag();
      }
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(span);
  auto coords_of = [&](const Eigen::MatrixXcd& x) {
    Eigen::VectorXd v(2 * m.ambient * m.ambient);
    for (std::size_t r = 0; r < m.ambient; ++r)
      for (std::size_t c = 0; c < m.ambient; ++c) {
        v(r * m.ambient + c) = x(r, c).real();
        v(m.ambient * m.ambient + r * m.ambient + c) = x(r, c).imag();
      }
    return Eigen::VectorXd(cod.solve(v));
  };

  ConsistencyReport rep;
  auto probe = [&](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y,
                   const Vec& want, std::size_t pi, std::size_t pj) {
    auto comm = [&](double t) {
      Eigen::MatrixXcd a = expm(t * x), bb = expm(t * y);
      Eigen::MatrixXcd ai = expm(-t * x), bi = expm(-t * y);
      return logm_near_identity(a * bb * ai * bi);
    };
    // Symmetrized in t to cancel the cubic BCH term.
    Eigen::MatrixXcd est = (comm(h) + comm(-h)) / (2 * h * h);
    Eigen::VectorXd got = coords_of(est);
    double res = 0.0;
    for (std::size_t k = 0; k < dim; ++k)
      res = std::max(res, std::abs(got(k) - want[k].approx().real()));
    if (res > rep.max_residual) {
      rep.max_residual = res;
      rep.worst_pair[0] = pi;
      rep.worst_pair[1] = pj;
    }
  };

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      probe(b[i], b[j], g.p.bracket_basis(i, j), i, j);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Vec cx(dim), cy(dim);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(m.ambient, m.ambient);
    Eigen::MatrixXcd y = x;
    for (std::size_t k = 0; k < dim; ++k) {
      double a = u(rng), c = u(rng);
      cx[k] = Scalar::floating(a);
      cy[k] = Scalar::floating(c);
      x += a * b[k];
      y += c * b[k];
    }
    Vec want(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        if (i == j) continue;
        Vec br = g.p.bracket_basis(i, j);
        for (std::size_t k = 0; k < dim; ++k)
          want[k] += cx[i] * cy[j] * br[k];
      }
    probe(x, y, want, dim + s, dim + s);
  }
  return rep;
}

}  // namespace invconn
