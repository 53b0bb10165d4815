#include "catalog.hpp"

#include "errors.hpp"

#include <numeric>

namespace invconn {

namespace {

Mat unit(std::size_t m, std::size_t r, std::size_t c) {
  Mat e(m, m);
  e(r, c) = Scalar(1);
  return e;
}

// i * (E_rr - E_ss)
Mat diag_i(std::size_t m, std::size_t r, std::size_t s) {
  Mat e(m, m);
  e(r, r) = Scalar::i();
  e(s, s) = -Scalar::i();
  return e;
}

// E_pq - E_qp
Mat x_pair(std::size_t m, std::size_t p, std::size_t q) {
  Mat e(m, m);
  e(p, q) = Scalar(1);
  e(q, p) = Scalar(-1);
  return e;
}

// i * (E_pq + E_qp)
Mat y_pair(std::size_t m, std::size_t p, std::size_t q) {
  Mat e(m, m);
  e(p, q) = Scalar::i();
  e(q, p) = Scalar::i();
  return e;
}

std::size_t pair_rank(std::size_t p, std::size_t q, std::size_t m) {
  return p * m - p * (p + 1) / 2 + (q - p - 1);
}
std::size_t su_x_index(std::size_t m, std::size_t p, std::size_t q) {
  return (m - 1) + 2 * pair_rank(p, q, m);
}
std::size_t su_y_index(std::size_t m, std::size_t p, std::size_t q) {
  return su_x_index(m, p, q) + 1;
}

std::vector<Mat> su_matrices(std::size_t m) {
  std::vector<Mat> b;
  for (std::size_t a = 0; a + 1 < m; ++a) b.push_back(diag_i(m, a, a + 1));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = p + 1; q < m; ++q) {
      b.push_back(x_pair(m, p, q));
      b.push_back(y_pair(m, p, q));
    }
  return b;
}

// exact expansion over the basis with real coefficients (real and imaginary
// parts of every matrix entry give one equation each)
Vec expand_real(const std::vector<Mat>& basis, const Mat& target) {
  const std::size_t m = target.rows();
  const std::size_t cnt = basis.size();
  Mat a(2 * m * m, cnt);
  Vec b(2 * m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      std::size_t row = 2 * (r * m + s);
      for (std::size_t c = 0; c < cnt; ++c) {
        a(row, c) = Scalar(basis[c](r, s).exact_re());
        a(row + 1, c) = Scalar(basis[c](r, s).exact_im());
      }
      b[row] = Scalar(target(r, s).exact_re());
      b[row + 1] = Scalar(target(r, s).exact_im());
    }
  auto sol = exact_solve(a, b);
  if (!sol)
    fail(ErrorKind::Construction,
         "matrix does not lie in the real span of the basis");
  return *sol;
}

// complex-coefficient variant
Vec expand_complex(const std::vector<Mat>& basis, const Mat& target) {
  const std::size_t m = target.rows();
  const std::size_t cnt = basis.size();
  Mat a(m * m, cnt);
  Vec b(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      std::size_t row = r * m + s;
      for (std::size_t c = 0; c < cnt; ++c) a(row, c) = basis[c](r, s);
      b[row] = target(r, s);
    }
  auto sol = exact_solve(a, b);
  if (!sol)
    fail(ErrorKind::Construction,
         "matrix does not lie in the complex span of the basis");
  return *sol;
}

// act[j] column i = n-coordinates of [s_j, n_i], read off ambient commutators
std::vector<Mat> derive_action(const std::vector<Mat>& smats,
                               const std::vector<Mat>& nmats) {
  std::vector<Mat> act;
  const std::size_t nd = nmats.size();
  for (const Mat& s : smats) {
    Mat aj(nd, nd);
    for (std::size_t i = 0; i < nd; ++i) {
      Vec c = expand_complex(nmats, commutator(s, nmats[i]));
      for (std::size_t r = 0; r < nd; ++r) aj(r, i) = c[r];
    }
    act.push_back(std::move(aj));
  }
  return act;
}

std::vector<std::string> f_labels(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back("f" + std::to_string(i + 1));
  return l;
}

LieAlgebra abelian_complex(std::size_t n, const std::string& name) {
  return LieAlgebra::from_structure(name, Field::Complex, n, f_labels(n), {});
}

// Block upper-triangular nilradical of the (p, m-p) parabolic, with the
// compact Levi s(u(p) + u(q)) acting by ambient commutators.
CatalogEntry build_parabolic(std::size_t m, std::size_t p, std::string id,
                             std::string title) {
  const std::size_t q = m - p;
  const std::size_t nd = p * q;

  CatalogEntry e;
  e.id = std::move(id);
  e.title = std::move(title);

  std::vector<Mat> nmats;
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < q; ++b) nmats.push_back(unit(m, a, p + b));
  e.n = abelian_complex(nd, "C^" + std::to_string(nd));
  e.n.set_model(nmats);

  e.ks = s_u_u_algebra(p, q);
  const std::vector<Mat>& smats = *e.ks.model();
  e.action = DerivationAction{e.ks, e.n, derive_action(smats, nmats)};

  e.has_model = true;
  e.model.ambient = m;
  e.model.n_basis = nmats;
  e.model.s_basis = smats;

  e.k = su_algebra(m);
  e.dbeta = Mat(e.k.dim(), e.ks.dim());
  for (std::size_t j = 0; j < e.ks.dim(); ++j) {
    Vec col = expand_real(*e.k.model(), smats[j]);
    e.dbeta.set_col(j, col);
  }
  e.zeta = e.ks.zero();
  e.zeta[0] = Scalar(1);
  std::size_t g = std::gcd(p, q);
  e.w0 = static_cast<int>((p + q) / g);

  // omega(v) = v - v^dagger lands in su(m); columns follow (f, i f) order
  PairSpec std_pair;
  std_pair.id = "std";
  std_pair.omega = Mat(e.k.dim(), 2 * nd);
  std::size_t i = 0;
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < q; ++b, ++i) {
      std_pair.omega(su_x_index(m, a, p + b), i) = Scalar(1);
      std_pair.omega(su_y_index(m, a, p + b), nd + i) = Scalar(1);
    }
  std_pair.expect_holomorphic = true;
  e.pairs.push_back(std_pair);

  e.expected.invariant_dim = 2;
  e.expected.block_weights = {static_cast<long>(e.w0), 0,
                              -static_cast<long>(e.w0)};
  return e;
}

CatalogEntry build_sl2_k1() {
  CatalogEntry e = build_parabolic(
      2, 1, "sl2-k1", "line parabolic in sl(2): abelian line under u(1)");
  e.pairs[0].id = "su2-w1";
  return e;
}

CatalogEntry build_sl3_k1() {
  CatalogEntry e =
      build_parabolic(3, 1, "sl3-k1",
                      "point parabolic in sl(3): C^2 under s(u(1)+u(2))");
  // second invariant direction: values rotated a quarter turn in the fiber
  PairSpec rot;
  rot.id = "rot";
  rot.omega = Mat(e.k.dim(), 4);
  for (std::size_t b = 0; b < 2; ++b) {
    rot.omega(su_y_index(3, 0, 1 + b), b) = Scalar(1);
    rot.omega(su_x_index(3, 0, 1 + b), 2 + b) = Scalar(-1);
  }
  rot.expect_holomorphic = true;
  e.pairs.push_back(rot);
  return e;
}

CatalogEntry build_sl4_k2() {
  return build_parabolic(
      4, 2, "sl4-k2", "middle parabolic in sl(4): 2x2 block under s(u(2)+u(2))");
}

CatalogEntry build_sp4_siegel() {
  const std::size_t m = 4;
  CatalogEntry e;
  e.id = "sp4-siegel";
  e.title = "Siegel parabolic in sp(4): Sym^2 C^2 under u(2)";

  // symmetric 2x2 matrices placed in the upper-right block
  std::vector<Mat> nmats;
  {
    Mat n1(m, m), n2(m, m), n3(m, m);
    n1(0, 2) = Scalar(1);
    n2(0, 3) = Scalar(1);
    n2(1, 2) = Scalar(1);
    n3(1, 3) = Scalar(1);
    nmats = {n1, n2, n3};
  }
  e.n = abelian_complex(3, "Sym^2 C^2");
  e.n.set_model(nmats);

  // u(2) embedded as [[A, 0], [0, -A^T]]
  std::vector<Mat> smats;
  {
    Mat s1(m, m), s2(m, m), s3(m, m), s4(m, m);
    s1(0, 0) = s1(1, 1) = Scalar::i();
    s1(2, 2) = s1(3, 3) = -Scalar::i();
    s2(0, 0) = s2(3, 3) = Scalar::i();
    s2(1, 1) = s2(2, 2) = -Scalar::i();
    s3(0, 1) = Scalar(1);
    s3(1, 0) = Scalar(-1);
    s3(2, 3) = Scalar(1);
    s3(3, 2) = Scalar(-1);
    s4(0, 1) = s4(1, 0) = Scalar::i();
    s4(2, 3) = s4(3, 2) = -Scalar::i();
    smats = {s1, s2, s3, s4};
  }
  e.ks = LieAlgebra::from_matrix_basis("u(2)", Field::Real, smats);
  e.action = DerivationAction{e.ks, e.n, derive_action(smats, nmats)};

  e.has_model = true;
  e.model.ambient = m;
  e.model.n_basis = nmats;
  e.model.s_basis = smats;

  e.k = compact_sp2_algebra();
  e.dbeta = Mat(e.k.dim(), e.ks.dim());
  for (std::size_t j = 0; j < e.ks.dim(); ++j)
    e.dbeta.set_col(j, expand_real(*e.k.model(), smats[j]));
  e.zeta = e.ks.zero();
  e.zeta[0] = Scalar(1);
  e.w0 = 2;

  PairSpec std_pair;
  std_pair.id = "std";
  std_pair.omega = Mat(e.k.dim(), 6);
  for (std::size_t j = 0; j < 3; ++j) {
    std_pair.omega(4 + j, j) = Scalar(1);      // v - v^dagger
    std_pair.omega(7 + j, 3 + j) = Scalar(1);  // iv - (iv)^dagger
  }
  std_pair.expect_holomorphic = true;
  e.pairs.push_back(std_pair);

  e.expected.invariant_dim = 2;
  e.expected.block_weights = {2, 0, -2};
  return e;
}

CatalogEntry build_heisenberg() {
  const std::size_t m = 3;
  CatalogEntry e;
  e.id = "heisenberg";
  e.title = "complex Heisenberg algebra: circle weights (1,1,2) are not scalar";

  e.n = LieAlgebra::from_structure("heis3-C", Field::Complex, 3,
                                   {"x", "y", "z"},
                                   {BracketTerm{0, 1, 2, Scalar(1)}});
  std::vector<Mat> nmats = {unit(m, 0, 1), unit(m, 1, 2), unit(m, 0, 2)};
  e.n.set_model(nmats);

  Mat s1(m, m);
  s1(0, 0) = Scalar::i();
  s1(2, 2) = -Scalar::i();
  std::vector<Mat> smats = {s1};
  e.ks = LieAlgebra::from_matrix_basis("u(1)", Field::Real, smats);
  e.action = DerivationAction{e.ks, e.n, derive_action(smats, nmats)};

  e.has_model = true;
  e.model.ambient = m;
  e.model.n_basis = nmats;
  e.model.s_basis = smats;

  e.k = su_algebra(2);
  e.dbeta = Mat(e.k.dim(), 1);  // the trivial homomorphism
  e.zeta = e.ks.zero();
  e.zeta[0] = Scalar(1);
  e.w0 = 1;  // trial value; the scalar-action check must reject it
  e.z_declared = false;
  return e;
}

CatalogEntry build_c2_u3() {
  const std::size_t m = 3;
  CatalogEntry e;
  e.id = "c2-u3";
  e.title = "scalar circle on C^2 into u(3): invariance without holomorphicity";

  std::vector<Mat> nmats = {unit(m, 0, 1), unit(m, 0, 2)};
  e.n = abelian_complex(2, "C^2");
  e.n.set_model(nmats);

  Mat s1(m, m);
  s1(0, 0) = Scalar::i();
  std::vector<Mat> smats = {s1};
  e.ks = LieAlgebra::from_matrix_basis("u(1)", Field::Real, smats);
  e.action = DerivationAction{e.ks, e.n, derive_action(smats, nmats)};

  e.has_model = true;
  e.model.ambient = m;
  e.model.n_basis = nmats;
  e.model.s_basis = smats;

  e.k = u_algebra(3);
  Mat zk(m, m);
  zk(0, 0) = Scalar::i();
  zk(2, 2) = -Scalar::i();
  e.dbeta = Mat(e.k.dim(), 1);
  e.dbeta.set_col(0, expand_real(*e.k.model(), zk));
  e.zeta = e.ks.zero();
  e.zeta[0] = Scalar(1);
  e.w0 = 1;

  // invariant pairs written through their antilinear parts: the weight -1
  // block of gl(3) is spanned by E21 and E32, and
  //   E21 = -(X12 + i Y12)/2,  E32 = -(X23 + i Y23)/2
  Realification nr = realify(e.n);
  Scalar neg_half(Rational(-1, 2));
  Scalar neg_half_i = Scalar::i() * neg_half;

  Mat a_rank1(e.k.dim(), 2);
  a_rank1(su_x_index(m, 0, 1), 0) = neg_half;
  a_rank1(su_y_index(m, 0, 1), 0) = neg_half_i;
  PairSpec rank1;
  rank1.id = "rank1";
  rank1.omega = antiholomorphic_to_real(AntiHolMap{a_rank1}, nr);
  rank1.expect_holomorphic = true;  // [E21, 0] = 0
  e.pairs.push_back(rank1);

  Mat a_diag(e.k.dim(), 2);
  a_diag(su_x_index(m, 0, 1), 0) = neg_half;
  a_diag(su_y_index(m, 0, 1), 0) = neg_half_i;
  a_diag(su_x_index(m, 1, 2), 1) = neg_half;
  a_diag(su_y_index(m, 1, 2), 1) = neg_half_i;
  PairSpec diag;
  diag.id = "diag";
  diag.omega = antiholomorphic_to_real(AntiHolMap{a_diag}, nr);
  diag.expect_holomorphic = false;  // [E21, E32] = -E31 survives
  e.pairs.push_back(diag);

  e.expected.invariant_dim = 8;
  e.expected.block_weights = {2, 1, 0, -1, -2};
  return e;
}

}  // namespace

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {
      "sl2-k1", "sl3-k1", "sl4-k2", "sp4-siegel", "heisenberg", "c2-u3"};
  return ids;
}

CatalogEntry build_entry(const std::string& id) {
  if (id == "sl2-k1") return build_sl2_k1();
  if (id == "sl3-k1") return build_sl3_k1();
  if (id == "sl4-k2") return build_sl4_k2();
  if (id == "sp4-siegel") return build_sp4_siegel();
  if (id == "heisenberg") return build_heisenberg();
  if (id == "c2-u3") return build_c2_u3();
  fail(ErrorKind::Input, "unknown catalog entry '" + id + "'");
}

LieAlgebra su_algebra(std::size_t m) {
  if (m < 2) fail(ErrorKind::Input, "su(m) needs m >= 2");
  return LieAlgebra::from_matrix_basis("su(" + std::to_string(m) + ")",
                                       Field::Real, su_matrices(m));
}

LieAlgebra u_algebra(std::size_t m) {
  std::vector<Mat> b = su_matrices(m);
  Mat z(m, m);
  for (std::size_t r = 0; r < m; ++r) z(r, r) = Scalar::i();
  b.push_back(z);
  return LieAlgebra::from_matrix_basis("u(" + std::to_string(m) + ")",
                                       Field::Real, b);
}

LieAlgebra s_u_u_algebra(std::size_t p, std::size_t q) {
  const std::size_t m = p + q;
  const std::size_t g = std::gcd(p, q);
  std::vector<Mat> b;
  Mat zeta(m, m);
  for (std::size_t r = 0; r < p; ++r)
    zeta(r, r) = Scalar::i() * Scalar(Rational(static_cast<long>(q / g)));
  for (std::size_t r = p; r < m; ++r)
    zeta(r, r) = -Scalar::i() * Scalar(Rational(static_cast<long>(p / g)));
  b.push_back(zeta);
  auto block = [&](std::size_t off, std::size_t sz) {
    for (std::size_t a = 0; a + 1 < sz; ++a)
      b.push_back(diag_i(m, off + a, off + a + 1));
    for (std::size_t r = 0; r < sz; ++r)
      for (std::size_t s = r + 1; s < sz; ++s) {
        b.push_back(x_pair(m, off + r, off + s));
        b.push_back(y_pair(m, off + r, off + s));
      }
  };
  block(0, p);
  block(p, q);
  return LieAlgebra::from_matrix_basis(
      "s(u(" + std::to_string(p) + ")+u(" + std::to_string(q) + "))",
      Field::Real, b);
}

LieAlgebra compact_sp2_algebra() {
  const std::size_t m = 4;
  std::vector<Mat> b;
  {
    Mat k1(m, m), k2(m, m), k3(m, m), k4(m, m);
    k1(0, 0) = k1(1, 1) = Scalar::i();
    k1(2, 2) = k1(3, 3) = -Scalar::i();
    k2(0, 0) = k2(3, 3) = Scalar::i();
    k2(1, 1) = k2(2, 2) = -Scalar::i();
    k3(0, 1) = Scalar(1);
    k3(1, 0) = Scalar(-1);
    k3(2, 3) = Scalar(1);
    k3(3, 2) = Scalar(-1);
    k4(0, 1) = k4(1, 0) = Scalar::i();
    k4(2, 3) = k4(3, 2) = -Scalar::i();
    b = {k1, k2, k3, k4};
  }
  // B-parts: [[0, B], [-conj(B), 0]] for B = B_j and i B_j
  auto sym = [&](std::size_t r, std::size_t s, bool imag) {
    Mat out(m, m);
    Scalar one = imag ? Scalar::i() : Scalar(1);
    Scalar back = imag ? Scalar::i() : Scalar(-1);
    out(r, 2 + s) = one;
    out(s, 2 + r) = one;
    out(2 + r, s) = back;
    out(2 + s, r) = back;
    return out;
  };
  const std::pair<std::size_t, std::size_t> spots[] = {{0, 0}, {0, 1}, {1, 1}};
  for (bool imag : {false, true})
    for (auto [r, s] : spots) b.push_back(sym(r, s, imag));
  return LieAlgebra::from_matrix_basis("sp(2)", Field::Real, b);
}

}  // namespace invconn
