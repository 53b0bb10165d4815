#pragma once
#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "scalar.hpp"

namespace invconn {

using Vec = std::vector<Scalar>;

class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }
  static Mat from_eigen(const Eigen::MatrixXcd& e);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const Scalar& c) const;
  Mat transpose() const;
  Mat conjugate() const;

  Vec apply(const Vec& x) const;
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  bool all_exact() const;
  double max_abs() const;
  Eigen::MatrixXcd approx() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Scalar> a_;
};

Mat commutator(const Mat& a, const Mat& b);
Scalar trace(const Mat& a);
Mat kron(const Mat& a, const Mat& b);

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);
Vec vec_conj(const Vec& v);
double vec_max_abs(const Vec& v);
bool vec_is_zero(const Vec& v);  // exact zero test (all entries exact & zero)
Eigen::VectorXcd vec_approx(const Vec& v);
Vec vec_from_approx(const Eigen::VectorXcd& v);

// Exact Gauss-Jordan over the Gaussian rationals.  All inputs must be exact.
struct Rref {
  Mat r;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};
Rref exact_rref(Mat a);
std::vector<Vec> exact_kernel(const Mat& a);
// Solves a*x = b exactly; nullopt when inconsistent.
std::optional<Vec> exact_solve(const Mat& a, const Vec& b);
Mat exact_inverse(const Mat& a);
std::size_t exact_rank(const Mat& a);

// Floating nullspace by SVD with threshold eps * max(1, sigma_max).
std::vector<Vec> float_kernel(const Mat& a, double eps);

// Mode-dispatching kernel: exact elimination when every entry is exact and
// exact mode is requested, SVD otherwise.
std::vector<Vec> kernel_basis(const Mat& a, bool exact_mode, double eps);

// Scaling-and-squaring exponential; series log for matrices near the
// identity; closed-form log for unipotent ones (the series terminates).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd logm_near_identity(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd logm_unipotent(const Eigen::MatrixXcd& m);
// Derivative of exp: d/dt exp(X + tV)|_0 = exp(X) * dexp_inv(X, V) with
// dexp_inv(X, V) = sum_k (-ad_X)^k(V) / (k+1)!.
Eigen::MatrixXcd dexp_right(const Eigen::MatrixXcd& x,
                            const Eigen::MatrixXcd& v);

// Orthonormal column basis of the span of the given vectors (floating).
Eigen::MatrixXcd orthonormal_basis(const std::vector<Vec>& vs, std::size_t dim);
// Frobenius distance between the orthogonal projectors onto two spans.
double projector_distance(const std::vector<Vec>& a, const std::vector<Vec>& b,
                          std::size_t dim);

}  // namespace invconn
