#include <doctest.h>

#include "catalog.hpp"
#include "pipeline.hpp"

#include <string>

using namespace invconn;

namespace {

const ordered_json& stage_named(const ordered_json& stages,
                                const std::string& name) {
  for (const auto& s : stages)
    if (s.at("stage") == name) return s;
  static ordered_json missing;
  return missing;
}

}  // namespace

TEST_CASE("validate accepts every entry except the failed circle candidate") {
  RunConfig cfg;
  for (const std::string& id : catalog_ids()) {
    CAPTURE(id);
    RunResult r = run_validate(build_entry(id), cfg);
    if (id == "heisenberg") {
      CHECK(r.exit_code == 2);
      CHECK(r.report.at("ok") == false);
    } else {
      CHECK(r.exit_code == 0);
      CHECK(r.report.at("ok") == true);
      CHECK(r.report.at("stages").size() == 8);
      for (const auto& s : r.report.at("stages")) CHECK(s.at("ok") == true);
    }
  }
}

TEST_CASE("the heisenberg candidate fails exactly at the circle check") {
  RunConfig cfg;
  RunResult r = run_validate(build_entry("heisenberg"), cfg);
  REQUIRE(r.exit_code == 2);
  const ordered_json& stages = r.report.at("stages");
  CHECK(stage_named(stages, "semidirect").at("ok") == true);
  CHECK(stage_named(stages, "model").at("ok") == true);
  CHECK(stage_named(stages, "zAction").at("ok") == false);
  CHECK(r.report.at("error").at("kind") == "hypothesis");
  std::string msg = r.report.at("error").at("message");
  CHECK(msg.find("single scalar character") != std::string::npos);
}

TEST_CASE("declared facts are cross-checked, not echoed") {
  RunConfig cfg;
  CatalogEntry e = build_entry("sl2-k1");
  e.expected.block_weights = {5};
  RunResult r = run_validate(e, cfg);
  CHECK(r.exit_code == 2);
  CHECK(stage_named(r.report.at("stages"), "weights").at("ok") == false);
  CHECK(r.report.at("error").at("kind") == "input");

  CatalogEntry e2 = build_entry("sl2-k1");
  e2.expected.invariant_dim = 7;
  RunResult r2 = run_validate(e2, cfg);
  CHECK(r2.exit_code == 2);
  CHECK(stage_named(r2.report.at("stages"), "invariants").at("ok") == false);
}

TEST_CASE("a disconnected symmetry group is refused up front") {
  RunConfig cfg;
  CatalogEntry e = build_entry("sl2-k1");
  e.ks_connected = false;
  RunResult r = run_validate(e, cfg);
  CHECK(r.exit_code == 2);
  CHECK(stage_named(r.report.at("stages"), "hypotheses").at("ok") == false);
  CHECK(r.report.at("error").at("kind") == "unsupported");
}

TEST_CASE("classify reports the moduli data for sl2-k1") {
  RunConfig cfg;
  RunResult r = run_classify(build_entry("sl2-k1"), cfg);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report.at("command") == "classify");
  CHECK(r.report.at("validation").at("ok") == true);
  CHECK(r.report.at("certificate").at("w0") == 2);
  CHECK(r.report.at("moduli").at("invariantDim") == 2);
  const ordered_json& pairs = r.report.at("pairs");
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].at("holomorphic") == true);
  CHECK(pairs[0].at("match") == true);
  CHECK(pairs[0].at("invarianceResidual").get<double>() == 0.0);
  // a single pair gives nothing to compare
  CHECK(!r.report.contains("equivalence"));
}

TEST_CASE("classify exhibits a basis of the moduli space and probes the cone") {
  RunConfig cfg;
  RunResult r = run_classify(build_entry("sl2-k1"), cfg);
  REQUIRE(r.exit_code == 0);
  const ordered_json& m = r.report.at("moduli");
  REQUIRE(m.at("invariantDim") == 2);
  REQUIRE(m.at("basis").size() == 2);
  // each basis element is a k.dim x dim_R(n) matrix
  REQUIRE(m.at("basis")[0].size() == 3);
  CHECK(m.at("basis")[0][0].size() == 2);
  const ordered_json& dirs = m.at("directions");
  REQUIRE(dirs.size() == 2);
  for (const auto& d : dirs) {
    CHECK(d.at("member") == true);
    CHECK(d.at("residual").get<double>() == 0.0);
  }
  CHECK(m.at("zeroElement").at("member") == true);
  CHECK(m.at("zeroElement").at("residual").get<double>() == 0.0);
}

TEST_CASE("the zero perturbation always sits in the cone") {
  RunConfig cfg;
  RunResult r = run_classify(build_entry("c2-u3"), cfg);
  REQUIRE(r.exit_code == 0);
  const ordered_json& m = r.report.at("moduli");
  CHECK(m.at("zeroElement").at("member") == true);
  CHECK(m.at("basis").size() == m.at("invariantDim").get<std::size_t>());
  CHECK(m.at("directions").size() == m.at("basis").size());
}

TEST_CASE("the character sweep pins down which multiples admit perturbations") {
  RunConfig cfg;
  cfg.beta_range = true;
  cfg.beta_lo = -3;
  cfg.beta_hi = 3;
  RunResult r = run_classify(build_entry("sl2-k1"), cfg);
  REQUIRE(r.exit_code == 0);
  const ordered_json& sweep = r.report.at("betaRange");
  CHECK(sweep.at("lo") == -3);
  CHECK(sweep.at("hi") == 3);
  const ordered_json& rows = sweep.at("perCharacter");
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].at("m") == -3);
  std::vector<long> dims;
  for (const auto& row : rows)
    dims.push_back(row.at("invariantDim").get<long>());
  CHECK(dims == std::vector<long>{0, 0, 2, 0, 2, 0, 0});

  // against a torus the perturbation space is empty for every character
  CatalogEntry e = build_entry("sl2-k1");
  e.k = u_algebra(1);
  e.dbeta = Mat(1, 1);
  e.dbeta(0, 0) = Scalar(1);
  e.pairs.clear();
  e.expected = ExpectedFacts{};
  RunResult tr = run_classify(e, cfg);
  REQUIRE(tr.exit_code == 0);
  for (const auto& row : tr.report.at("betaRange").at("perCharacter"))
    CHECK(row.at("invariantDim") == 0);
}

TEST_CASE("the character sweep refuses a nonabelian kS") {
  RunConfig cfg;
  cfg.beta_range = true;
  cfg.beta_lo = 0;
  cfg.beta_hi = 1;
  // sl3-k1 has kS = s(u(1) + u(2)), whose su(2) part kills the sweep
  RunResult r = run_classify(build_entry("sl3-k1"), cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.report.at("error").at("kind") == "input");
  std::string msg = r.report.at("error").at("message");
  CHECK(msg.find("abelian") != std::string::npos);
}

TEST_CASE("classify joins the two sl3-k1 pairs into one class") {
  RunConfig cfg;
  RunResult r = run_classify(build_entry("sl3-k1"), cfg);
  REQUIRE(r.exit_code == 0);
  const ordered_json& eq = r.report.at("equivalence");
  REQUIRE(eq.at("comparisons").size() == 1);
  CHECK(eq.at("comparisons")[0].at("verdict") == "equivalent");
  CHECK(eq.at("comparisons")[0].at("witnessError").get<double>() < 1e-6);
  REQUIRE(eq.at("classes").size() == 1);
  CHECK(eq.at("classes")[0].size() == 2);
}

TEST_CASE("classify separates the two c2-u3 pairs and flags expectations") {
  RunConfig cfg;
  CatalogEntry e = build_entry("c2-u3");
  RunResult r = run_classify(e, cfg);
  REQUIRE(r.exit_code == 0);
  const ordered_json& pairs = r.report.at("pairs");
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].at("holomorphic") == true);
  CHECK(pairs[1].at("holomorphic") == false);
  CHECK(pairs[1].at("c0").at("residual").get<double>() > 0.4);
  CHECK(r.report.at("equivalence").at("classes").size() == 2);

  // lying about the expectation must flip the exit code, not the math
  e.pairs[1].expect_holomorphic = true;
  RunResult lie = run_classify(e, cfg);
  CHECK(lie.exit_code == 3);
  CHECK(lie.report.at("pairs")[1].at("match") == false);
  CHECK(lie.report.at("pairs")[1].at("holomorphic") == false);
}

TEST_CASE("pairs without a stated expectation cannot flip the exit code") {
  RunConfig cfg;
  CatalogEntry e = build_entry("c2-u3");
  e.pairs[1].expect_known = false;     // the engineered non-holomorphic pair
  e.pairs[1].expect_holomorphic = true;  // would exit 3 if it were checked
  RunResult r = run_classify(e, cfg);
  CHECK(r.exit_code == 0);
  const ordered_json& pj = r.report.at("pairs")[1];
  CHECK(!pj.contains("expected"));
  CHECK(!pj.contains("match"));
  CHECK(pj.at("holomorphic") == false);
}

TEST_CASE("verify closes the loop between numerics and algebra on sl2-k1") {
  RunConfig cfg;
  cfg.grid = 3;
  RunResult r = run_verify(build_entry("sl2-k1"), cfg);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report.at("model").at("consistencyResidual").get<double>() < 1e-5);
  const ordered_json& fl = r.report.at("tautologicalFlatness");
  CHECK(fl.at("residual").get<double>() < 1e-6);
  CHECK(fl.at("ratio").get<double>() > 3.5);
  CHECK(fl.at("ratio").get<double>() < 4.5);
  CHECK(r.report.at("invariance").at("residual").get<double>() < 1e-6);
  for (const auto& p : r.report.at("pairs")) {
    CHECK(p.at("agree") == true);
    CHECK(p.at("f02Gap").get<double>() < 1e-6);
  }
}

TEST_CASE("a failed circle hypothesis gates holomorphicity, not flatness") {
  RunConfig cfg;
  cfg.grid = 3;
  RunResult r = run_verify(build_entry("heisenberg"), cfg);
  CHECK(r.exit_code == 2);
  const ordered_json& val = r.report.at("validation");
  CHECK(val.at("ok") == false);
  CHECK(stage_named(val.at("stages"), "zAction").at("ok") == false);
  // the flat connection exists on any semidirect product, so the
  // finite-difference checks still run and still succeed
  const ordered_json& fl = r.report.at("tautologicalFlatness");
  CHECK(fl.at("residual").get<double>() < 1e-6);
  CHECK(fl.at("ratio").get<double>() > 3.5);
  CHECK(fl.at("ratio").get<double>() < 4.5);
  CHECK(r.report.at("invariance").at("residual").get<double>() < 1e-6);
  CHECK(r.report.at("holomorphicity").at("gated") == true);
  std::string reason = r.report.at("holomorphicity").at("reason");
  CHECK(reason.find("character") != std::string::npos);
  CHECK(r.report.at("error").at("kind") == "hypothesis");
  CHECK(!r.report.contains("pairs"));
}

TEST_CASE("verify needs a matrix model to differentiate through") {
  RunConfig cfg;
  CatalogEntry e = build_entry("sl2-k1");
  e.has_model = false;
  RunResult r = run_verify(e, cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.report.at("error").at("kind") == "unsupported");
}
