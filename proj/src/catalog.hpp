#pragma once

#include "perturbation.hpp"
#include "semidirect.hpp"

#include <string>
#include <vector>

namespace invconn {

// A connection form shipped with a catalog entry, expressed in the basis
// conventions of that entry (k coordinates by realified n columns).
struct PairSpec {
  std::string id;
  Mat omega;
  // only checked (and reported) when a file or builder actually stated it
  bool expect_known = true;
  bool expect_holomorphic = false;
};

// Facts the builders promise; validation recomputes and cross-checks them.
struct ExpectedFacts {
  int invariant_dim = -1;           // real dimension, -1 when unstated
  std::vector<long> block_weights;  // descending, empty when unstated
};

struct CatalogEntry {
  std::string id;
  std::string title;
  LieAlgebra n;
  LieAlgebra ks;
  DerivationAction action;
  bool has_model = false;
  MatrixGroupModel model;
  LieAlgebra k;
  Mat dbeta;  // k.dim x ks.dim
  Vec zeta;   // ks coordinates of the central circle generator
  int w0 = 0;
  // false: w0 is only a trial value and validation is expected to reject it
  bool z_declared = true;
  bool ks_connected = true;
  std::vector<PairSpec> pairs;
  ExpectedFacts expected;
};

const std::vector<std::string>& catalog_ids();
CatalogEntry build_entry(const std::string& id);

// Exact compact bases, shared with the tests.
LieAlgebra su_algebra(std::size_t m);
LieAlgebra u_algebra(std::size_t m);
// s(u(p) + u(q)) inside su(p + q); the first basis vector generates the
// central circle, normalized to the shortest closed one.
LieAlgebra s_u_u_algebra(std::size_t p, std::size_t q);
// sp(4) intersected with u(4): blocks [[A, B], [-conj B, -A^T]], A in u(2),
// B symmetric.
LieAlgebra compact_sp2_algebra();

}  // namespace invconn
