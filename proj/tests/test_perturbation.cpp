#include <doctest.h>

#include "catalog.hpp"
#include "errors.hpp"
#include "perturbation.hpp"

#include <numbers>

using namespace invconn;

namespace {

HomomorphismDatum datum_of(const CatalogEntry& e) {
  return HomomorphismDatum{e.ks, e.k, e.dbeta, e.zeta, e.w0};
}

}  // namespace

// Independent oracle for the invariant subspace: averaging the circle action
// over 360 equal steps projects exactly onto the fixed vectors as long as all
// weights are integers of absolute value below 360 (the nonzero characters
// sum to zero over a full period).  No kernel computation involved.
TEST_CASE("circle averaging over 360 samples matches the invariant subspace") {
  CatalogEntry e = build_entry("sl2-k1");
  Realification nr = realify(e.n);
  HomomorphismDatum datum = datum_of(e);
  datum.validate(e.action, 1e-9);

  std::vector<Mat> inv = invariant_subspace(datum, e.action, nr, true, 1e-9);
  REQUIRE(inv.size() == 2);

  Mat op = action_operator(datum, e.action, nr, e.zeta);
  Eigen::MatrixXcd l = op.approx();
  const Eigen::Index d = l.rows();
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(d, d);
  for (int s = 0; s < 360; ++s)
    avg += expm((2.0 * std::numbers::pi * s / 360.0) * l);
  avg /= 360.0;

  PerturbationSpace ws{nr, e.k};
  std::vector<Vec> from_kernel;
  for (const Mat& w : inv) from_kernel.push_back(ws.vectorize(w));
  std::vector<Vec> from_average;
  for (Eigen::Index c = 0; c < d; ++c)
    from_average.push_back(vec_from_approx(avg.col(c)));

  CHECK(projector_distance(from_kernel, from_average,
                           static_cast<std::size_t>(d)) < 1e-9);
}

TEST_CASE("invariant matrices are annihilated by every generator, exactly") {
  for (const char* id : {"sl2-k1", "sl3-k1", "sp4-siegel", "c2-u3"}) {
    CatalogEntry e = build_entry(id);
    Realification nr = realify(e.n);
    HomomorphismDatum datum = datum_of(e);
    std::vector<Mat> inv = invariant_subspace(datum, e.action, nr, true, 1e-9);
    CHECK(!inv.empty());
    for (const Mat& w : inv)
      for (std::size_t b = 0; b < e.ks.dim(); ++b) {
        Mat moved = apply_action(datum, e.action, nr, e.ks.basis_vector(b), w);
        CHECK(moved.all_exact());
        CHECK(moved.max_abs() == 0.0);
      }
  }
}

TEST_CASE("declared catalog pairs really live in the invariant subspace") {
  for (const char* id : {"sl2-k1", "sl3-k1", "sl4-k2", "sp4-siegel", "c2-u3"}) {
    CatalogEntry e = build_entry(id);
    Realification nr = realify(e.n);
    HomomorphismDatum datum = datum_of(e);
    for (const PairSpec& p : e.pairs) {
      CandidatePair cp{datum, p.omega};
      CHECK_NOTHROW(cp.validate(e.action, nr, 1e-9));
    }
  }
}

TEST_CASE("a generic matrix is rejected as a candidate pair") {
  CatalogEntry e = build_entry("sl2-k1");
  Realification nr = realify(e.n);
  Mat junk(e.k.dim(), nr.real.dim());
  junk(0, 0) = Scalar(1);  // not invariant under the circle
  CandidatePair cp{datum_of(e), junk};
  CHECK_THROWS_AS(cp.validate(e.action, nr, 1e-9), Error);
}

TEST_CASE("antiholomorphic extraction inverts the real embedding") {
  CatalogEntry e = build_entry("c2-u3");
  Realification nr = realify(e.n);

  // complex matrix -> real form -> back
  Mat a(e.k.dim(), nr.complex_dim);
  a(0, 0) = Scalar(Rational(1), Rational(2));
  a(3, 1) = Scalar(Rational(-1, 3));
  a(7, 0) = Scalar::i();
  Mat w = antiholomorphic_to_real(AntiHolMap{a}, nr);
  CHECK(w.all_exact());
  Mat back = real_to_antiholomorphic(w, nr).a;
  CHECK((back - a).max_abs() == 0.0);

  // catalog pair forms are purely antilinear by construction
  for (const PairSpec& p : e.pairs) {
    AntiHolMap alpha = real_to_antiholomorphic(p.omega, nr);
    Mat again = antiholomorphic_to_real(alpha, nr);
    CHECK((again - p.omega).max_abs() == 0.0);
  }
}

TEST_CASE("vectorize and unvectorize are mutually inverse") {
  CatalogEntry e = build_entry("sl2-k1");
  Realification nr = realify(e.n);
  PerturbationSpace ws{nr, e.k};
  Mat w(e.k.dim(), nr.real.dim());
  w(0, 0) = Scalar(Rational(2, 7));
  w(2, 1) = Scalar(-5);
  Vec v = ws.vectorize(w);
  CHECK(v.size() == ws.dim());
  Mat back = ws.unvectorize(v);
  CHECK((back - w).max_abs() == 0.0);
}

TEST_CASE("the datum validator spots broken inputs") {
  CatalogEntry e = build_entry("sl2-k1");

  // zeta that is not central: impossible for a 1-dim kS, so test on sl3-k1
  CatalogEntry e3 = build_entry("sl3-k1");
  HomomorphismDatum off = datum_of(e3);
  off.zeta = e3.ks.basis_vector(1);  // an su(2) generator, not central
  CHECK_THROWS_AS(off.validate(e3.action, 1e-9), Error);

  // wrong scalar weight
  HomomorphismDatum wrong = datum_of(e);
  wrong.weight_on_n = 5;
  CHECK_THROWS_AS(wrong.validate(e.action, 1e-9), Error);

  // dbeta that is not a homomorphism: send the central circle somewhere
  // that fails to commute with the rest of the image
  HomomorphismDatum bad = datum_of(e3);
  bad.dbeta(0, 0) = bad.dbeta(0, 0) + Scalar(1);
  CHECK_THROWS_AS(bad.validate(e3.action, 1e-9), Error);
}
