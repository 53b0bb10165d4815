#pragma once
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace invconn {

enum class Field { Real, Complex };

// One sparse structure constant: [e_i, e_j] += c * e_k with i < j.
struct BracketTerm {
  std::size_t i, j, k;
  Scalar c;
};

struct JacobiReport {
  double max_residual = 0.0;
  bool exact_zero = true;           // meaningful only for all-exact tables
  std::size_t worst[3] = {0, 0, 0};
  bool pass(double eps) const { return exact_zero || max_residual <= eps; }
};

// A finite-dimensional Lie algebra given by a basis and sparse structure
// constants.  Elements are coordinate vectors.  Real algebras must have real
// structure constants; coordinates of real algebras are real by convention
// (their basis vectors may well be complex matrices in a defining model).
class LieAlgebra {
 public:
  static LieAlgebra from_structure(std::string name, Field field,
                                   std::size_t dim,
                                   std::vector<std::string> labels,
                                   std::vector<BracketTerm> table);
  // Derives structure constants from commutators of the given matrices and
  // remembers them as the defining model.  Fails unless the span is closed.
  static LieAlgebra from_matrix_basis(std::string name, Field field,
                                      std::vector<Mat> basis);

  const std::string& name() const { return name_; }
  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<BracketTerm>& table() const { return table_; }
  const std::optional<std::vector<Mat>>& model() const { return model_; }
  void set_model(std::vector<Mat> m) { model_ = std::move(m); }

  Vec zero() const { return Vec(dim_); }
  Vec basis_vector(std::size_t i) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec bracket_basis(std::size_t i, std::size_t j) const;
  Mat ad(const Vec& x) const;  // matrix of [x, .]
  Mat ad_basis(std::size_t i) const;

  JacobiReport check_jacobi() const;
  Mat killing_form() const;  // K_ij = tr(ad e_i ad e_j)
  bool is_semisimple() const;

 private:
  std::string name_;
  Field field_ = Field::Real;
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<BracketTerm> table_;
  std::optional<std::vector<Mat>> model_;
};

// Complexification h = k (x) C of a real algebra, with the conjugation sigma
// fixing k.  h shares the basis and structure constants of k; sigma is
// entrywise coordinate conjugation.
struct RealForm {
  LieAlgebra compact;  // the real input
  LieAlgebra complexified;
  Vec sigma(const Vec& v) const { return vec_conj(v); }
};
RealForm complexify(const LieAlgebra& k);

// The conjugate complex structure on the same underlying real space.  The
// canonical antilinear bijection n -> nbar is coordinate conjugation, and in
// nbar-coordinates the scalar action is plain multiplication.
struct ConjugateSpace {
  std::size_t dim = 0;
  Vec to_bar(const Vec& z) const { return vec_conj(z); }
  Vec from_bar(const Vec& w) const { return vec_conj(w); }
  // lambda .bar v computed through the identification; equals conj(lambda)*v.
  Vec scalar_action_on_original(const Scalar& lambda, const Vec& v) const {
    return from_bar(vec_scale(lambda, to_bar(v)));
  }
};
ConjugateSpace conjugate_space(const LieAlgebra& n);

// A complex algebra viewed as a real one of doubled dimension.  Real basis
// order: f_1..f_n, i*f_1..i*f_n.
struct Realification {
  LieAlgebra real;      // dim 2n over R
  std::size_t complex_dim = 0;
  Mat j;                // multiplication by i, a real 2n x 2n matrix
  Vec embed(const Vec& z) const;            // C^n -> R^2n
  Vec lift(const Vec& x) const;             // R^2n -> C^n
  Mat embed_endo(const Mat& c) const;       // complex n x n -> real 2n x 2n
};
Realification realify(const LieAlgebra& n);

// Ad-invariant positive form on a compact algebra: -Killing when semisimple,
// else the negative trace form of the defining model, else the identity (with
// a flag so reports can say so).  Extended hermitianly to complexifications.
struct AdInvariantForm {
  Mat gram;  // real symmetric positive definite
  std::string source;  // "killing" | "model-trace" | "identity"
  Scalar pairing(const Vec& x, const Vec& y) const;  // x^* G y
  double norm(const Vec& x) const;
};
AdInvariantForm invariant_form(const LieAlgebra& k);

}  // namespace invconn
