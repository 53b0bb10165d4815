// Acceptance gate for the classifier.  Every criterion prints exactly one
// PASS/FAIL line with the measured quantities; the process exits nonzero if
// any line fails.  argv[1] names the command-line binary, which is driven
// through a pipe exactly as a user would run it; the structural criteria use
// the library in-process.

#include "catalog.hpp"
#include "perturbation.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace invconn;
using nlohmann::ordered_json;

namespace {

int g_failures = 0;

void line(int index, const char* name, bool ok, const std::string& detail) {
  if (!ok) ++g_failures;
  std::printf("%s %d %-28s %s\n", ok ? "PASS" : "FAIL", index, name,
              detail.c_str());
  std::fflush(stdout);
}

void criterion(int index, const char* name,
               const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    line(index, name, ok, detail);
  } catch (const std::exception& e) {
    line(index, name, false, std::string("exception: ") + e.what());
  }
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  CliRun r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

HomomorphismDatum datum_of(const CatalogEntry& e) {
  return HomomorphismDatum{e.ks, e.k, e.dbeta, e.zeta, e.w0};
}

Eigen::MatrixXd ad_matrix(const LieAlgebra& k, const Eigen::VectorXd& x) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k.dim(), k.dim());
  for (std::size_t i = 0; i < k.dim(); ++i)
    m += x(static_cast<Eigen::Index>(i)) *
         k.ad(k.basis_vector(i)).approx().real();
  return m;
}

Mat to_mat(const Eigen::MatrixXd& m) {
  Mat r(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          Scalar::floating(m(i, j));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  // Differential checks are the slow part, so each entry is verified once
  // and the report shared between the criteria that read different parts.
  std::map<std::string, CliRun> verify_cache;
  auto verify_of = [&](const std::string& id) -> const CliRun& {
    auto it = verify_cache.find(id);
    if (it == verify_cache.end())
      it = verify_cache
               .emplace(id, run_cli(cli, "verify --catalog " + id +
                                             " --step 1e-4"))
               .first;
    return it->second;
  };

  // 1. Every structure-constant table in the catalog is exact, and the
  //    Jacobi sweep over all of them stays under a second.
  criterion(1, "exact-jacobi-under-1s", [&] {
    std::vector<CatalogEntry> entries;
    for (const std::string& id : catalog_ids())
      entries.push_back(build_entry(id));
    int algebras = 0;
    bool exact = true;
    auto t0 = std::chrono::steady_clock::now();
    for (const CatalogEntry& e : entries)
      for (const LieAlgebra* a : {&e.n, &e.ks, &e.k}) {
        JacobiReport r = a->check_jacobi();
        exact = exact && r.exact_zero && r.max_residual == 0.0;
        ++algebras;
      }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    bool ok = exact && secs < 1.0;
    return std::pair{ok, std::to_string(algebras) + " algebras across " +
                             std::to_string(entries.size()) +
                             " entries, residuals exactly zero: " +
                             (exact ? "yes" : "no") + ", " + fmt(secs) + "s"};
  });

  // 2. The pulled-back canonical form is flat to first order on every matrix
  //    model in the catalog (the rejected entry included), and halving the
  //    finite-difference step shrinks the residual like h^2.
  criterion(2, "flat-connection-order-h2", [&] {
    bool ok = true;
    int models = 0;
    double worst_res = 0.0, lo_ratio = 1e300, hi_ratio = 0.0;
    std::string bad;
    for (const std::string& id : catalog_ids()) {
      const CliRun& r = verify_of(id);
      ordered_json j = ordered_json::parse(r.out);
      bool gated = j.contains("holomorphicity") &&
                   j.at("holomorphicity").value("gated", false);
      if (r.exit_code != (gated ? 2 : 0) ||
          !j.contains("tautologicalFlatness")) {
        ok = false;
        bad += id + " exit " + std::to_string(r.exit_code) + "; ";
        continue;
      }
      double res = j.at("tautologicalFlatness").at("residual").get<double>();
      double ratio = j.at("tautologicalFlatness").at("ratio").get<double>();
      worst_res = std::max(worst_res, res);
      lo_ratio = std::min(lo_ratio, ratio);
      hi_ratio = std::max(hi_ratio, ratio);
      ok = ok && res < 1e-6 && ratio > 3.5 && ratio < 4.5;
      ++models;
    }
    return std::pair{ok, std::to_string(models) +
                             " models, worst residual " + fmt(worst_res) +
                             ", refinement ratios in [" + fmt(lo_ratio) +
                             ", " + fmt(hi_ratio) + "] (want 4)" +
                             (bad.empty() ? "" : "; " + bad)};
  });

  // 3. The invariant subspace agrees with an independent oracle: averaging
  //    the circle action over 360 equal steps, which projects onto the
  //    fixed vectors without any kernel computation.  The average is only
  //    that projector when the declared circle spans the whole symmetry
  //    algebra, so the sweep takes the one-dimensional-kS entries — and
  //    every small entry (dim n <= 2, dim k <= 3) must be among them.
  criterion(3, "circle-average-oracle", [&] {
    bool ok = true;
    int exercised = 0;
    std::string detail;
    for (const std::string& id : catalog_ids()) {
      CatalogEntry e = build_entry(id);
      bool small = e.n.dim() <= 2 && e.k.dim() <= 3;
      if (!e.z_declared || e.ks.dim() != 1) {
        if (small) {
          ok = false;
          detail += id + " small but not eligible for the oracle; ";
        }
        continue;
      }
      Realification nr = realify(e.n);
      HomomorphismDatum datum = datum_of(e);
      datum.validate(e.action, 1e-9);
      std::vector<Mat> inv =
          invariant_subspace(datum, e.action, nr, true, 1e-9);

      Eigen::MatrixXcd l =
          action_operator(datum, e.action, nr, e.zeta).approx();
      const Eigen::Index d = l.rows();
      Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(d, d);
      for (int s = 0; s < 360; ++s)
        avg += expm((2.0 * std::numbers::pi * s / 360.0) * l);
      avg /= 360.0;

      PerturbationSpace ws{nr, e.k};
      std::vector<Vec> from_kernel, from_average;
      for (const Mat& w : inv) from_kernel.push_back(ws.vectorize(w));
      for (Eigen::Index c = 0; c < d; ++c)
        from_average.push_back(vec_from_approx(avg.col(c)));
      double dist = projector_distance(from_kernel, from_average,
                                       static_cast<std::size_t>(d));
      int want = id == "sl2-k1" ? 2 : e.expected.invariant_dim;
      ok = ok && dist < 1e-9 &&
           (want < 0 || inv.size() == static_cast<std::size_t>(want));
      ++exercised;
      detail += id + " dim " + std::to_string(inv.size()) + " distance " +
                fmt(dist) + "; ";
    }
    ok = ok && exercised >= 2;
    return std::pair{ok, std::to_string(exercised) + " entries: " + detail};
  });

  // 4. Numerically differentiated curvature splits agree with the algebraic
  //    quadratic term on every accepted entry, and the sweep meets both a
  //    holomorphic and a non-holomorphic pair along the way.
  criterion(4, "curvature-split-agreement", [&] {
    bool ok = true, saw_true = false, saw_false = false;
    int pairs_seen = 0;
    double worst_gap = 0.0;
    std::string bad;
    for (const std::string& id : catalog_ids()) {
      CatalogEntry e = build_entry(id);
      if (e.pairs.empty()) continue;
      const CliRun& r = verify_of(id);
      if (r.exit_code != 0) {
        ok = false;
        bad += id + " exit " + std::to_string(r.exit_code) + "; ";
        continue;
      }
      ordered_json j = ordered_json::parse(r.out);
      for (const auto& p : j.at("pairs")) {
        if (p.at("holomorphic").get<bool>()) saw_true = true;
        else saw_false = true;
        double gap = p.at("f02Gap").get<double>();
        worst_gap = std::max(worst_gap, gap);
        ok = ok && p.at("agree").get<bool>() && gap < 1e-6;
        ++pairs_seen;
      }
    }
    ok = ok && saw_true && saw_false && pairs_seen >= 2;
    return std::pair{ok, std::to_string(pairs_seen) +
                             " pairs, both verdicts present: " +
                             (saw_true && saw_false ? "yes" : "no") +
                             ", worst numeric-vs-algebraic F02 gap " +
                             fmt(worst_gap) +
                             (bad.empty() ? "" : "; " + bad)};
  });

  // 5. The weight-block certificate closes the vanishing argument on every
  //    entry that survives validation: circle weight on the fiber pinned to
  //    the known value, projectors summing to the identity, and no verdict
  //    falling back to "inconclusive" on entries or their pairs.
  criterion(5, "dbar-vanishing-certificates", [&] {
    const std::map<std::string, int> want_w0 = {{"sl2-k1", 2},
                                                {"sl3-k1", 3},
                                                {"sl4-k2", 2},
                                                {"sp4-siegel", 2},
                                                {"c2-u3", 1}};
    bool ok = true;
    std::string detail;
    for (const std::string& id : catalog_ids()) {
      CliRun r = run_cli(cli, "classify --catalog " + id);
      ordered_json j = ordered_json::parse(r.out);
      if (r.exit_code == 2 && j.contains("error") &&
          j.at("error").at("kind") == "hypothesis") {
        detail += id + " rejected; ";
        continue;  // entries that fail validation carry no certificate
      }
      auto pin = want_w0.find(id);
      if (r.exit_code != 0 || pin == want_w0.end()) {
        ok = false;
        detail += id + " exit " + std::to_string(r.exit_code) + "; ";
        continue;
      }
      const ordered_json& c = j.at("certificate");
      std::string v = c.at("verdict");
      bool entry_ok = c.at("w0").get<int>() == pin->second &&
                      c.at("projectorSumResidual").get<double>() < 1e-9 &&
                      (v == "vanishes" || v == "vacuous");
      for (const auto& p : j.at("pairs")) {
        std::string pv = p.at("certificate").at("verdict");
        entry_ok = entry_ok && (pv == "vanishes" || pv == "vacuous");
      }
      ok = ok && entry_ok;
      detail += id + " w0=" + std::to_string(c.at("w0").get<int>()) + " " +
                v + "; ";
    }
    return std::pair{ok, detail};
  });

  // 6. An entry whose candidate circle fails the scalar-character test is
  //    rejected at exactly that stage, after the semidirect structure has
  //    already been accepted.
  criterion(6, "hypothesis-failure-rejected", [&] {
    CliRun r = run_cli(cli, "validate --catalog heisenberg");
    ordered_json j = ordered_json::parse(r.out);
    bool semidirect_ok = false, zaction_failed = false;
    for (const auto& s : j.at("stages")) {
      if (s.at("stage") == "semidirect") semidirect_ok = s.at("ok");
      if (s.at("stage") == "zAction") zaction_failed = !s.at("ok").get<bool>();
    }
    bool ok = r.exit_code == 2 && semidirect_ok && zaction_failed &&
              j.at("error").at("kind") == "hypothesis";
    return std::pair{ok, "exit " + std::to_string(r.exit_code) +
                             ", semidirect ok, failure at zAction, kind '" +
                             j.at("error").at("kind").get<std::string>() +
                             "'"};
  });

  // 7. Orbit recognition: conjugating a random invariant pair by a random
  //    group element and asking whether the two are equivalent must succeed
  //    every time, with a witness that actually aligns them.
  criterion(7, "orbit-recognition-100-trips", [&] {
    CatalogEntry e = build_entry("sl2-k1");
    Realification nr = realify(e.n);
    HomomorphismDatum datum = datum_of(e);
    std::vector<Mat> inv = invariant_subspace(datum, e.action, nr, true, 1e-9);

    std::mt19937_64 rng(977);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(-0.5, 0.5);
    int equivalent = 0, inequivalent = 0;
    double worst_witness = 0.0;
    for (int trip = 0; trip < 100; ++trip) {
      Mat omega(e.k.dim(), nr.real.dim());
      double size = 0.0;
      while (size < 0.3) {
        omega = Mat(e.k.dim(), nr.real.dim());
        size = 0.0;
        for (const Mat& b : inv) {
          double c = coef(rng);
          omega = omega + b.scaled(Scalar::floating(c));
          size = std::max(size, std::abs(c));
        }
      }
      CandidatePair p{datum, omega};
      Eigen::VectorXd x(e.k.dim());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = angle(rng);
      Eigen::MatrixXd g =
          expm(ad_matrix(e.k, x).cast<std::complex<double>>()).real();
      CandidatePair q = p;
      q.beta.dbeta = to_mat(g * p.beta.dbeta.approx().real());
      q.omega = to_mat(g * p.omega.approx().real());

      EquivalenceResult r = equivalent_pairs(p, q, EquivalenceOptions{});
      if (r.verdict == EquivalenceVerdict::Equivalent) {
        ++equivalent;
        worst_witness = std::max(worst_witness, r.witness_error);
      } else if (r.verdict == EquivalenceVerdict::Inequivalent) {
        ++inequivalent;
      }
    }
    bool ok = equivalent == 100 && inequivalent == 0 && worst_witness < 1e-6;
    return std::pair{ok, std::to_string(equivalent) +
                             "/100 recognized, false separations " +
                             std::to_string(inequivalent) +
                             ", worst witness error " + fmt(worst_witness)};
  });

  // 8. Reports are a pure function of the input and the seed.
  criterion(8, "deterministic-reports", [&] {
    CliRun a = run_cli(cli, "classify --catalog sl3-k1 --seed 777");
    CliRun b = run_cli(cli, "classify --catalog sl3-k1 --seed 777");
    bool ok = a.exit_code == 0 && b.exit_code == 0 && a.out == b.out &&
              !a.out.empty();
    return std::pair{ok, "two runs, " + std::to_string(a.out.size()) +
                             " bytes each, byte-identical: " +
                             (a.out == b.out ? "yes" : "no")};
  });

  return g_failures == 0 ? 0 : 1;
}
