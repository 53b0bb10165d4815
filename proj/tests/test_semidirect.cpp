#include <doctest.h>

#include "catalog.hpp"
#include "errors.hpp"
#include "semidirect.hpp"

using namespace invconn;

TEST_CASE("semidirect sum of a catalog entry: jacobi and ideal property") {
  CatalogEntry e = build_entry("sl2-k1");
  SemidirectSum g = semidirect_sum(e.n, e.ks, e.action, 1e-9);
  CHECK(g.n_dim == 2);  // one complex dimension, realified
  CHECK(g.s_dim == 1);
  CHECK(g.p.dim() == 3);
  CHECK(g.p.check_jacobi().exact_zero);

  IntegrabilityReport r = verify_horizontal_integrability(g.p, g.n_dim);
  CHECK(r.pass(1e-12));
}

TEST_CASE("nonabelian n still sits as an ideal") {
  CatalogEntry e = build_entry("heisenberg");
  SemidirectSum g = semidirect_sum(e.n, e.ks, e.action, 1e-9);
  CHECK(g.p.check_jacobi().exact_zero);
  CHECK(verify_horizontal_integrability(g.p, g.n_dim).pass(1e-12));
}

TEST_CASE("a subalgebra that is not an ideal is flagged") {
  // span{d} inside su(2): [d, x] = 2y leaves the line
  LieAlgebra k = su_algebra(2);
  IntegrabilityReport r = verify_horizontal_integrability(k, 1);
  CHECK(!r.pass(1e-9));
  CHECK(r.ideal_residual > 1.0);
}

TEST_CASE("heisenberg group multiplication matches the bch formula") {
  CatalogEntry e = build_entry("heisenberg");
  REQUIRE(e.has_model);
  // [f1, f2] = f3 and everything else vanishes, so
  // exp(f1) exp(f2) = exp(f1 + f2 + f3/2) holds on the nose.
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(3), y = Eigen::VectorXcd::Zero(3),
                   z = Eigen::VectorXcd::Zero(3);
  x(0) = 1.0;
  y(1) = 1.0;
  z(0) = 1.0;
  z(1) = 1.0;
  z(2) = 0.5;
  Eigen::MatrixXcd lhs = e.model.exp_n(x) * e.model.exp_n(y);
  Eigen::MatrixXcd rhs = e.model.exp_n(z);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("model consistency residual shrinks like h^2") {
  CatalogEntry e = build_entry("sl2-k1");
  SemidirectSum g = semidirect_sum(e.n, e.ks, e.action, 1e-9);
  ConsistencyReport coarse = model_consistency(g, e.model, 6, 1e-3, 5);
  ConsistencyReport fine = model_consistency(g, e.model, 6, 5e-4, 5);
  CHECK(coarse.max_residual < 1e-4);
  CHECK(fine.max_residual < coarse.max_residual);
}

TEST_CASE("broken derivation actions are rejected") {
  // kS of this entry is nonabelian, so scaling a single action matrix breaks
  // the homomorphism property (derivations form a vector space, so scaling
  // everything would slip through; scaling one generator cannot).
  CatalogEntry e = build_entry("sl3-k1");
  DerivationAction bad = e.action;
  bad.act[1] = bad.act[1].scaled(Scalar(2));
  CHECK_THROWS_AS(bad.validate(1e-9), Error);
}

TEST_CASE("action matrices of the wrong shape are rejected") {
  CatalogEntry e = build_entry("sl2-k1");
  DerivationAction bad = e.action;
  bad.act[0] = Mat(3, 3);
  CHECK_THROWS_AS(bad.validate(1e-9), Error);
}
