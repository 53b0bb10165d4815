#pragma once

#include "catalog.hpp"
#include "specfile.hpp"

#include <cstdint>

namespace invconn {

// Knobs shared by the validate / classify / verify drivers.  `exact` selects
// the arithmetic for the structural stages; the finite-difference harness is
// always floating point.
struct RunConfig {
  bool exact = true;
  double eps = 1e-9;
  std::size_t grid = 5;          // lattice points per axis
  double half_width = 0.4;       // lattice spans [-half_width, half_width]
  std::size_t max_points = 3125; // deterministic thinning cap
  double step = 1e-4;            // finite-difference step h
  std::uint64_t seed = 12345;
  std::size_t samples = 12;      // group elements for the invariance probe
  // classify only: sweep dbeta over integer multiples m in [lo, hi] of the
  // entry's homomorphism (characters of an abelian kS) and report the
  // invariant dimension per character
  bool beta_range = false;
  long beta_lo = 0;
  long beta_hi = 0;
};

// exit_code: 0 = ok, 2 = the entry was rejected (a stage or hypothesis
// failed), 3 = a computed verdict contradicts a declared expectation.
struct RunResult {
  int exit_code = 0;
  ordered_json report;
};

RunResult run_validate(const CatalogEntry& e, const RunConfig& cfg);
RunResult run_classify(const CatalogEntry& e, const RunConfig& cfg);
RunResult run_verify(const CatalogEntry& e, const RunConfig& cfg);

}  // namespace invconn
