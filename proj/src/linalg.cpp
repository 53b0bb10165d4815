#include "linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace invconn {

static void require_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Input, std::string("shape mismatch in matrix ") + op);
}

Mat Mat::from_eigen(const Eigen::MatrixXcd& e) {
  Mat m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      m(i, j) = Scalar::floating(e(i, j));
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  require_same_shape(*this, o, "add");
  Mat r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  require_same_shape(*this, o, "sub");
  Mat r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::Input, "shape mismatch in matrix mul");
  Mat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& aik = (*this)(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r(i, j) += aik * o(k, j);
    }
  return r;
}

Mat Mat::operator-() const { return scaled(Scalar(-1)); }

Mat Mat::scaled(const Scalar& c) const {
  Mat r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = c * a_[k];
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Mat Mat::conjugate() const {
  Mat r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].conj();
  return r;
}

Vec Mat::apply(const Vec& x) const {
  if (x.size() != cols_) fail(ErrorKind::Input, "shape mismatch in apply");
  Vec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Mat::all_exact() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](const Scalar& s) { return s.exact(); });
}

double Mat::max_abs() const {
  double m = 0;
  for (const Scalar& s : a_) m = std::max(m, s.abs());
  return m;
}

Eigen::MatrixXcd Mat::approx() const {
  Eigen::MatrixXcd e(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) e(i, j) = (*this)(i, j).approx();
  return e;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Scalar trace(const Mat& a) {
  Scalar t;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    t += a(i, i);
  return t;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

Vec vec_conj(const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].conj();
  return r;
}

double vec_max_abs(const Vec& v) {
  double m = 0;
  for (const Scalar& s : v) m = std::max(m, s.abs());
  return m;
}

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) {
    return s.exact() && s.is_zero();
  });
}

Eigen::VectorXcd vec_approx(const Vec& v) {
  Eigen::VectorXcd e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e(i) = v[i].approx();
  return e;
}

Vec vec_from_approx(const Eigen::VectorXcd& v) {
  Vec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = Scalar::floating(v(i));
  return r;
}

Rref exact_rref(Mat a) {
  if (!a.all_exact())
    fail(ErrorKind::Input, "exact elimination on non-exact matrix");
  Rref out;
  std::size_t pr = 0;  // pivot row
  for (std::size_t c = 0; c < a.cols() && pr < a.rows(); ++c) {
    std::size_t piv = pr;
    while (piv < a.rows() && a(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != pr)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pr, j), a(piv, j));
    Scalar inv = Scalar(1) / a(pr, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(pr, j) = inv * a(pr, j);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pr || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        a(i, j) = a(i, j) - f * a(pr, j);
    }
    out.pivot_cols.push_back(c);
    ++pr;
  }
  out.r = std::move(a);
  return out;
}

std::vector<Vec> exact_kernel(const Mat& a) {
  Rref rr = exact_rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(a.cols());
    v[f] = Scalar(1);
    for (std::size_t p = 0; p < rr.pivot_cols.size(); ++p)
      v[rr.pivot_cols[p]] = -rr.r(p, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> exact_solve(const Mat& a, const Vec& b) {
  Mat aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref rr = exact_rref(std::move(aug));
  Vec x(a.cols());
  for (std::size_t p = 0; p < rr.pivot_cols.size(); ++p) {
    if (rr.pivot_cols[p] == a.cols()) return std::nullopt;  // inconsistent
    x[rr.pivot_cols[p]] = rr.r(p, a.cols());
  }
  return x;
}

Mat exact_inverse(const Mat& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::Input, "inverse of non-square");
  std::size_t n = a.rows();
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar(1);
  }
  Rref rr = exact_rref(std::move(aug));
  if (rr.rank() != n || rr.pivot_cols.back() >= n)
    fail(ErrorKind::Input, "matrix not invertible");
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.r(i, n + j);
  return inv;
}

std::size_t exact_rank(const Mat& a) { return exact_rref(a).rank(); }

std::vector<Vec> float_kernel(const Mat& a, double eps) {
  Eigen::MatrixXcd m = a.approx();
  if (m.rows() == 0 || m.cols() == 0) {
    std::vector<Vec> full;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Vec v(m.cols());
      v[j] = Scalar(1);
      full.push_back(v);
    }
    return full;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  double thresh = eps * std::max(1.0, smax);
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > thresh) ++rank;
  std::vector<Vec> basis;
  for (Eigen::Index j = rank; j < m.cols(); ++j) {
    Eigen::VectorXcd v = svd.matrixV().col(j);
    // Deterministic phase: rotate the largest entry to the positive real axis.
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    std::complex<double> ph = v(imax) / std::abs(v(imax));
    v /= ph;
    basis.push_back(vec_from_approx(v));
  }
  return basis;
}

std::vector<Vec> kernel_basis(const Mat& a, bool exact_mode, double eps) {
  if (exact_mode && a.all_exact()) return exact_kernel(a);
  return float_kernel(a, eps);
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) {
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  Eigen::MatrixXcd t = m / std::pow(2.0, s);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::MatrixXcd term = sum;
  for (int k = 1; k <= 24; ++k) {
    term = (term * t) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-22) break;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

Eigen::MatrixXcd logm_near_identity(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd e = m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  double norm = e.cwiseAbs().maxCoeff();
  if (norm > 0.5)
    fail(ErrorKind::Numeric, "matrix log requested too far from identity");
  Eigen::MatrixXcd pw = e;
  Eigen::MatrixXcd sum = e;
  for (int k = 2; k <= 48; ++k) {
    pw = pw * e;
    sum += pw * (((k % 2) ? 1.0 : -1.0) / k);
    if (pw.cwiseAbs().maxCoeff() < 1e-24) break;
  }
  return sum;
}

Eigen::MatrixXcd logm_unipotent(const Eigen::MatrixXcd& m) {
  // For nilpotent E = m - I the series is a polynomial identity.
  Eigen::MatrixXcd e = m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::MatrixXcd pw = e;
  Eigen::MatrixXcd sum = e;
  for (Eigen::Index k = 2; k <= m.rows(); ++k) {
    pw = pw * e;
    sum += pw * (((k % 2) ? 1.0 : -1.0) / static_cast<double>(k));
  }
  return sum;
}

Eigen::MatrixXcd dexp_right(const Eigen::MatrixXcd& x,
                            const Eigen::MatrixXcd& v) {
  Eigen::MatrixXcd term = v;
  Eigen::MatrixXcd sum = v;
  double fact = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term = -(x * term - term * x);  // (-ad_x)^k applied to v
    fact *= (k + 1);
    sum += term / fact;
    if (term.cwiseAbs().maxCoeff() / fact < 1e-22) break;
  }
  return sum;
}

Eigen::MatrixXcd orthonormal_basis(const std::vector<Vec>& vs,
                                   std::size_t dim) {
  if (vs.empty()) return Eigen::MatrixXcd(dim, 0);
  Eigen::MatrixXcd m(dim, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(j) = vec_approx(vs[j]);
  // column pivoting plus a rank cut, so dependent inputs do not smuggle
  // arbitrary completion directions into the basis
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  qr.setThreshold(1e-10);
  Eigen::Index rank = qr.rank();
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(dim, rank);
  return q;
}

double projector_distance(const std::vector<Vec>& a, const std::vector<Vec>& b,
                          std::size_t dim) {
  Eigen::MatrixXcd qa = orthonormal_basis(a, dim);
  Eigen::MatrixXcd qb = orthonormal_basis(b, dim);
  Eigen::MatrixXcd pa = qa * qa.adjoint();
  Eigen::MatrixXcd pb = qb * qb.adjoint();
  return (pa - pb).norm();
}

}  // namespace invconn
