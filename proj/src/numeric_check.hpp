#pragma once

#include "perturbation.hpp"
#include "semidirect.hpp"

#include <cstdint>
#include <vector>

namespace invconn {

// Polynomial k-valued gauge parameter rho: R^d -> R^m used to scramble
// trivializations before differentiating them back.  Component j is
//   lin * x[u] + cub * x[u]^3 * x[v],   u = j mod d, v = (j+1) mod d,
// so partial derivatives are available in closed form and third derivatives
// do not vanish (central differences then converge at a clean h^2 rate).
struct GaugeField {
  std::size_t domain_dim = 0;
  std::size_t target_dim = 0;
  double lin = 0.3;
  double cub = 0.15;

  Eigen::VectorXd value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd partial(const Eigen::VectorXd& x, std::size_t mu) const;
};

// Uniform lattice of per_axis points per axis on [-half_width, half_width]^dim,
// thinned deterministically (fixed stride over the row-major enumeration) to
// at most cap points.
std::vector<Eigen::VectorXd> sample_grid(std::size_t dim,
                                         std::size_t per_axis,
                                         double half_width, std::size_t cap);

// The k(S)-component of the Maurer-Cartan form pulled back by the gauged
// section x -> exp_n(x) exp_s(rho(x)), evaluated through the matrix model.
// The section derivative is computed analytically (dexp), so the only finite
// differences are the ones applied to the resulting connection form when
// testing flatness.
struct FlatnessReport {
  double max_residual = 0.0;     // max entry of dA + [A, A] over the grid
  double split_residual = 0.0;   // worst defect when splitting into n + k(S)
  std::size_t points = 0;
  double h = 0.0;
};
FlatnessReport tautological_flatness(const SemidirectSum& g,
                                     const MatrixGroupModel& model,
                                     const GaugeField& rho,
                                     const std::vector<Eigen::VectorXd>& pts,
                                     double h);

// Runs the flatness residual at h and h/2; the ratio should sit near 4.
struct ConvergenceProbe {
  double coarse = 0.0;
  double fine = 0.0;
  double ratio = 0.0;
  double h = 0.0;
};
ConvergenceProbe flatness_convergence(const SemidirectSum& g,
                                      const MatrixGroupModel& model,
                                      const GaugeField& rho,
                                      const std::vector<Eigen::VectorXd>& pts,
                                      double h);

// Left translation by sampled group elements: the pulled-back form must match
// the gauge transform by the cocycle c(x) = sigma(tau(x))^{-1} g sigma(x).
struct InvarianceReport {
  double max_residual = 0.0;
  std::size_t samples = 0;
};
InvarianceReport tautological_invariance(const SemidirectSum& g,
                                         const MatrixGroupModel& model,
                                         const GaugeField& rho,
                                         std::size_t samples, double h,
                                         std::uint64_t seed = 7);

// The constant form of a pair, pushed through the gauge exp(rho(x)): columns
// are Ad(exp(-rho)) w(e_mu) + (left logarithmic derivative of exp(rho)).
Eigen::MatrixXd pair_gauged_form(const LieAlgebra& k, const Eigen::MatrixXd& w,
                                 const GaugeField& rho,
                                 const Eigen::VectorXd& x);
// Inverse of the gauge transform at x; recovers the constant matrix.
Eigen::MatrixXd pair_ungauge_form(const LieAlgebra& k, const Eigen::MatrixXd& a,
                                  const GaugeField& rho,
                                  const Eigen::VectorXd& x);

// Numeric curvature of the gauged pair connection, differenced on the grid,
// gauged back, Hodge-split, and compared against the algebraic values
// [w(v), w(w)] and phi(omega^{0,1}).
struct PairCurvatureReport {
  double max_f02 = 0.0;       // largest numeric F^{0,2} entry
  double max_f02_gap = 0.0;   // against the algebraic quadratic term
  double max_total_gap = 0.0; // full curvature against [w, w]
  double max_f11 = 0.0;       // scale reference
  std::size_t points = 0;
  double h = 0.0;

  bool holomorphic(double tol) const { return max_f02 <= tol; }
};
PairCurvatureReport pair_curvature(const LieAlgebra& k, const Realification& nr,
                                   const Mat& omega, const GaugeField& rho,
                                   const std::vector<Eigen::VectorXd>& pts,
                                   double h);

}  // namespace invconn
