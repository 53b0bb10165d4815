#include <doctest.h>

#include "errors.hpp"
#include "linalg.hpp"

#include <random>

using namespace invconn;

namespace {

Mat from_ints(std::initializer_list<std::initializer_list<int>> rows) {
  Mat m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (int v : row) m(i, j++) = Scalar(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("exact solve against a hand-checked system") {
  // 2x + y = 5, x - y = 1  =>  x = 2, y = 1
  Mat a = from_ints({{2, 1}, {1, -1}});
  Vec b{Scalar(5), Scalar(1)};
  auto x = exact_solve(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Scalar(2));
  CHECK((*x)[1] == Scalar(1));

  // inconsistent system
  Mat c = from_ints({{1, 1}, {2, 2}});
  Vec d{Scalar(1), Scalar(3)};
  CHECK(!exact_solve(c, d).has_value());
}

TEST_CASE("exact kernel of a rank-4 6x6 matrix has dimension 2") {
  // rows 4,5 are linear combinations of rows 0..3
  Mat m(6, 6);
  int base[4][6] = {{1, 0, 2, -1, 0, 3},
                    {0, 1, 1, 1, -2, 0},
                    {2, -1, 0, 0, 1, 1},
                    {1, 1, 1, 1, 1, 1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = Scalar(base[i][j]);
  for (std::size_t j = 0; j < 6; ++j) {
    m(4, j) = Scalar(base[0][j]) + Scalar(2) * Scalar(base[2][j]);
    m(5, j) = Scalar(base[1][j]) - Scalar(base[3][j]);
  }
  CHECK(exact_rank(m) == 4);
  auto ker = exact_kernel(m);
  REQUIRE(ker.size() == 2);
  for (const Vec& v : ker) CHECK(vec_is_zero(m.apply(v)));

  // float path sees the same kernel
  auto kf = float_kernel(m, 1e-12);
  CHECK(kf.size() == 2);
  CHECK(projector_distance(ker, kf, 6) < 1e-12);
}

TEST_CASE("matrix exponential on closed-form cases") {
  // nilpotent: exp([[0,1],[0,0]]) = [[1,1],[0,1]]
  Eigen::MatrixXcd n(2, 2);
  n << 0, 1, 0, 0;
  Eigen::MatrixXcd en = expm(n);
  CHECK((en - (Eigen::MatrixXcd(2, 2) << 1, 1, 0, 1).finished()).cwiseAbs().maxCoeff() < 1e-15);

  // rotation generator
  double t = 0.7;
  Eigen::MatrixXcd r(2, 2);
  r << 0, -t, t, 0;
  Eigen::MatrixXcd er = expm(r);
  CHECK(std::abs(er(0, 0) - std::cos(t)) < 1e-14);
  CHECK(std::abs(er(1, 0) - std::sin(t)) < 1e-14);

  // log inverts exp near the identity
  Eigen::MatrixXcd small = 0.05 * r;
  CHECK((logm_near_identity(expm(small)) - small).cwiseAbs().maxCoeff() < 1e-12);

  // unipotent log terminates and inverts exactly
  CHECK((logm_unipotent(en) - n).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("dexp matches a central difference of exp") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  Eigen::MatrixXcd a(3, 3), v(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a(i, j) = std::complex<double>(u(rng), u(rng));
      v(i, j) = std::complex<double>(u(rng), u(rng));
    }
  double h = 1e-5;
  Eigen::MatrixXcd fd = (expm(a + h * v) - expm(a - h * v)) / (2.0 * h);
  Eigen::MatrixXcd an = expm(a) * dexp_right(a, v);
  CHECK((fd - an).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("exact inverse and rref bookkeeping") {
  Mat a = from_ints({{1, 2}, {3, 5}});
  Mat inv = exact_inverse(a);
  Mat prod = a * inv;
  CHECK(prod(0, 0) == Scalar(1));
  CHECK(prod(0, 1) == Scalar(0));
  CHECK(prod(1, 0) == Scalar(0));
  CHECK(prod(1, 1) == Scalar(1));
  CHECK_THROWS_AS(exact_inverse(from_ints({{1, 2}, {2, 4}})), Error);

  Rref r = exact_rref(from_ints({{0, 1, 2}, {0, 2, 4}}));
  CHECK(r.rank() == 1);
  CHECK(r.pivot_cols == std::vector<std::size_t>{1});
}

TEST_CASE("orthonormal basis and projector distance") {
  std::vector<Vec> span{{Scalar(1), Scalar(1), Scalar(0)},
                        {Scalar(1), Scalar(-1), Scalar(0)}};
  Eigen::MatrixXcd q = orthonormal_basis(span, 3);
  CHECK(q.cols() == 2);
  CHECK((q.adjoint() * q - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-13);

  // the same plane written differently is distance zero; a different plane is not
  std::vector<Vec> same{{Scalar(3), Scalar(1), Scalar(0)},
                        {Scalar(0), Scalar(2), Scalar(0)}};
  std::vector<Vec> other{{Scalar(1), Scalar(0), Scalar(0)},
                         {Scalar(0), Scalar(0), Scalar(1)}};
  CHECK(projector_distance(span, same, 3) < 1e-13);
  CHECK(projector_distance(span, other, 3) > 0.5);
}

TEST_CASE("kron and commutator basics") {
  Mat a = from_ints({{0, 1}, {0, 0}});
  Mat b = from_ints({{0, 0}, {1, 0}});
  Mat c = commutator(a, b);  // = diag(1, -1)
  CHECK(c(0, 0) == Scalar(1));
  CHECK(c(1, 1) == Scalar(-1));
  CHECK(trace(c).is_zero());
  Mat k = kron(Mat::identity(2), a);
  CHECK(k.rows() == 4);
  CHECK(k(0, 1) == Scalar(1));
  CHECK(k(2, 3) == Scalar(1));
}
