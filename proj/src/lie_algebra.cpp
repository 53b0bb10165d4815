#include "lie_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace invconn {

static std::vector<std::string> default_labels(std::size_t dim,
                                               const char* stem) {
  std::vector<std::string> labels(dim);
  for (std::size_t i = 0; i < dim; ++i)
    labels[i] = std::string(stem) + std::to_string(i + 1);
  return labels;
}

LieAlgebra LieAlgebra::from_structure(std::string name, Field field,
                                      std::size_t dim,
                                      std::vector<std::string> labels,
                                      std::vector<BracketTerm> table) {
  LieAlgebra a;
  a.name_ = std::move(name);
  a.field_ = field;
  a.dim_ = dim;
  a.labels_ = labels.empty() ? default_labels(dim, "e") : std::move(labels);
  if (a.labels_.size() != dim)
    fail(ErrorKind::Input, "basis label count does not match dim");
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Scalar>>
      seen;
  for (const BracketTerm& t : table) {
    if (t.i >= t.j)
      fail(ErrorKind::Input,
           "bracket entry (" + std::to_string(t.i) + "," + std::to_string(t.j) +
               "," + std::to_string(t.k) + "): lower-triangular index (need i < j)");
    if (t.j >= dim || t.k >= dim)
      fail(ErrorKind::Input, "bracket entry index out of range");
    if (field == Field::Real && !t.c.is_real())
      fail(ErrorKind::Input, "complex structure constant in a real algebra");
    auto& slot = seen[{t.i, t.j}];
    auto it = slot.find(t.k);
    if (it != slot.end()) {
      if (!(it->second == t.c))
        fail(ErrorKind::Input, "conflicting duplicate bracket entry (" +
                                   std::to_string(t.i) + "," +
                                   std::to_string(t.j) + "," +
                                   std::to_string(t.k) + ")");
      continue;  // identical duplicate, keep one copy
    }
    slot.emplace(t.k, t.c);
  }
  for (const auto& [ij, ks] : seen)
    for (const auto& [k, c] : ks)
      if (!c.is_zero()) a.table_.push_back({ij.first, ij.second, k, c});
  return a;
}

LieAlgebra LieAlgebra::from_matrix_basis(std::string name, Field field,
                                         std::vector<Mat> basis) {
  if (basis.empty()) fail(ErrorKind::Input, "empty matrix basis");
  const std::size_t dim = basis.size();
  const std::size_t m = basis[0].rows();
  for (const Mat& b : basis)
    if (b.rows() != m || b.cols() != m)
      fail(ErrorKind::Input, "matrix basis with mixed ambient sizes");

  // Column space of vectorized basis elements; for real algebras the
  // coordinates must come out real, so split into real and imaginary rows.
  const bool real_coeffs = (field == Field::Real);
  const std::size_t vrows = real_coeffs ? 2 * m * m : m * m;
  Mat b(vrows, dim);
  auto vectorize = [&](const Mat& x) {
    Vec v(vrows);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        if (real_coeffs) {
          v[r * m + c] = x(r, c).real_part();
          v[m * m + r * m + c] = x(r, c).imag_part();
        } else {
          v[r * m + c] = x(r, c);
        }
      }
    return v;
  };
  for (std::size_t j = 0; j < dim; ++j) b.set_col(j, vectorize(basis[j]));
  if (exact_rank(b) != dim)
    fail(ErrorKind::Input, "matrix basis is linearly dependent");

  std::vector<BracketTerm> table;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      Mat c = commutator(basis[i], basis[j]);
      auto coords = exact_solve(b, vectorize(c));
      if (!coords)
        fail(ErrorKind::Input, "matrix basis not closed under commutator at (" +
                                   std::to_string(i) + "," + std::to_string(j) +
                                   ")");
      for (std::size_t k = 0; k < dim; ++k)
        if (!(*coords)[k].is_zero()) table.push_back({i, j, k, (*coords)[k]});
    }
  LieAlgebra a = from_structure(std::move(name), field, dim, {}, table);
  a.model_ = std::move(basis);
  return a;
}

Vec LieAlgebra::basis_vector(std::size_t i) const {
  Vec v(dim_);
  v[i] = Scalar(1);
  return v;
}

Vec LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  Vec v(dim_);
  if (i == j) return v;
  for (const BracketTerm& t : table_) {
    if (t.i == i && t.j == j) v[t.k] += t.c;
    if (t.i == j && t.j == i) v[t.k] -= t.c;
  }
  return v;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    fail(ErrorKind::Input, "bracket operand dimension mismatch");
  Vec v(dim_);
  for (const BracketTerm& t : table_) {
    Scalar c = t.c * (x[t.i] * y[t.j] - x[t.j] * y[t.i]);
    if (!c.is_zero()) v[t.k] += c;
  }
  return v;
}

Mat LieAlgebra::ad(const Vec& x) const {
  Mat m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) m.set_col(j, bracket(x, basis_vector(j)));
  return m;
}

Mat LieAlgebra::ad_basis(std::size_t i) const { return ad(basis_vector(i)); }

JacobiReport LieAlgebra::check_jacobi() const {
  JacobiReport rep;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      Vec bij = bracket_basis(i, j);
      for (std::size_t k = j + 1; k < dim_; ++k) {
        Vec r = bracket(basis_vector(i), bracket_basis(j, k));
        r = vec_add(r, bracket(basis_vector(j), bracket_basis(k, i)));
        r = vec_add(r, bracket(basis_vector(k), bij));
        if (!vec_is_zero(r)) {
          for (const Scalar& s : r) rep.exact_zero &= s.exact() && s.is_zero();
          double m = vec_max_abs(r);
          if (m > rep.max_residual) {
            rep.max_residual = m;
            rep.worst[0] = i;
            rep.worst[1] = j;
            rep.worst[2] = k;
          }
        }
      }
    }
  return rep;
}

Mat LieAlgebra::killing_form() const {
  std::vector<Mat> ads;
  ads.reserve(dim_);
  for (std::size_t i = 0; i < dim_; ++i) ads.push_back(ad_basis(i));
  Mat k(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j) {
      Scalar t = trace(ads[i] * ads[j]);
      k(i, j) = t;
      k(j, i) = t;
    }
  return k;
}

bool LieAlgebra::is_semisimple() const {
  Mat k = killing_form();
  if (k.all_exact()) return exact_rank(k) == dim_;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k.approx());
  const auto& sv = svd.singularValues();
  return sv.size() && sv(sv.size() - 1) > 1e-9 * std::max(1.0, sv(0));
}

RealForm complexify(const LieAlgebra& k) {
  if (k.field() == Field::Complex)
    fail(ErrorKind::Input, "complexify: input is already complex");
  RealForm rf;
  rf.compact = k;
  rf.complexified = LieAlgebra::from_structure(
      k.name() + "_C", Field::Complex, k.dim(), k.labels(),
      std::vector<BracketTerm>(k.table().begin(), k.table().end()));
  if (k.model()) rf.complexified.set_model(*k.model());
  return rf;
}

ConjugateSpace conjugate_space(const LieAlgebra& n) {
  if (n.field() != Field::Complex)
    fail(ErrorKind::Input, "conjugate_space: input must be complex");
  return ConjugateSpace{n.dim()};
}

Vec Realification::embed(const Vec& z) const {
  Vec x(2 * complex_dim);
  for (std::size_t a = 0; a < complex_dim; ++a) {
    x[a] = z[a].real_part();
    x[complex_dim + a] = z[a].imag_part();
  }
  return x;
}

Vec Realification::lift(const Vec& x) const {
  Vec z(complex_dim);
  for (std::size_t a = 0; a < complex_dim; ++a)
    z[a] = x[a] + Scalar::i() * x[complex_dim + a];
  return z;
}

Mat Realification::embed_endo(const Mat& c) const {
  const std::size_t n = complex_dim;
  Mat r(2 * n, 2 * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Scalar re = c(a, b).real_part(), im = c(a, b).imag_part();
      r(a, b) = re;
      r(a, n + b) = -im;
      r(n + a, b) = im;
      r(n + a, n + b) = re;
    }
  return r;
}

Realification realify(const LieAlgebra& n) {
  if (n.field() != Field::Complex)
    fail(ErrorKind::Input, "realify: input must be complex");
  const std::size_t d = n.dim();
  std::vector<std::string> labels(2 * d);
  for (std::size_t a = 0; a < d; ++a) {
    labels[a] = n.labels()[a];
    labels[d + a] = "i*" + n.labels()[a];
  }
  // [f_i, f_j] = sum (u + iv) f_k expands to the four real brackets below.
  std::vector<BracketTerm> table;
  for (const BracketTerm& t : n.table()) {
    Scalar u = t.c.real_part(), v = t.c.imag_part();
    auto push = [&](std::size_t i, std::size_t j, std::size_t k,
                    const Scalar& c) {
      if (c.is_zero()) return;
      if (i < j)
        table.push_back({i, j, k, c});
      else
        table.push_back({j, i, k, -c});
    };
    push(t.i, t.j, t.k, u);
    push(t.i, t.j, d + t.k, v);
    push(t.i, d + t.j, t.k, -v);
    push(t.i, d + t.j, d + t.k, u);
    push(d + t.i, t.j, t.k, -v);
    push(d + t.i, t.j, d + t.k, u);
    push(d + t.i, d + t.j, t.k, -u);
    push(d + t.i, d + t.j, d + t.k, -v);
  }
  Realification r;
  r.complex_dim = d;
  r.real = LieAlgebra::from_structure(n.name() + "_R", Field::Real, 2 * d,
                                      std::move(labels), std::move(table));
  if (n.model()) {
    std::vector<Mat> model = *n.model();
    for (std::size_t a = 0; a < d; ++a)
      model.push_back((*n.model())[a].scaled(Scalar::i()));
    r.real.set_model(std::move(model));
  }
  r.j = Mat(2 * d, 2 * d);
  for (std::size_t a = 0; a < d; ++a) {
    r.j(d + a, a) = Scalar(1);
    r.j(a, d + a) = Scalar(-1);
  }
  return r;
}

Scalar AdInvariantForm::pairing(const Vec& x, const Vec& y) const {
  Scalar s;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      if (gram(i, j).is_zero()) continue;
      s += x[i].conj() * gram(i, j) * y[j];
    }
  return s;
}

double AdInvariantForm::norm(const Vec& x) const {
  double v = pairing(x, x).approx().real();
  return v > 0 ? std::sqrt(v) : 0.0;
}

AdInvariantForm invariant_form(const LieAlgebra& k) {
  AdInvariantForm f;
  if (k.is_semisimple()) {
    f.gram = -k.killing_form();
    f.source = "killing";
    return f;
  }
  if (k.model()) {
    const auto& mod = *k.model();
    Mat g(k.dim(), k.dim());
    for (std::size_t i = 0; i < k.dim(); ++i)
      for (std::size_t j = i; j < k.dim(); ++j) {
        Scalar t = -trace(mod[i] * mod[j]).real_part();
        g(i, j) = t;
        g(j, i) = t;
      }
    f.gram = std::move(g);
    f.source = "model-trace";
    return f;
  }
  f.gram = Mat::identity(k.dim());
  f.source = "identity";
  return f;
}

}  // namespace invconn
