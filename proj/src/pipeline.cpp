#include "pipeline.hpp"

#include "errors.hpp"
#include "numeric_check.hpp"
#include "obstruction.hpp"
#include "weights.hpp"

#include <algorithm>
#include <complex>
#include <optional>
#include <sstream>

namespace invconn {

namespace {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Internal: return "internal";
  }
  return "internal";
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Everything the later commands reuse once the entry has been accepted.
struct Context {
  std::optional<SemidirectSum> sum;
  std::optional<Realification> nr;
  std::optional<HomomorphismDatum> datum;
  std::optional<IsotypicalDecomposition> dec;
  std::vector<Mat> invariants;
};

// Runs staged checks, appending one record per stage.  Stops at the first
// failure and fills `error`.  The stages come in two groups so that verify
// can keep going after a hypothesis failure: the structural group (the
// semidirect sum itself) and the hypothesis group (the circle data and the
// moduli it gates).
struct Stager {
  const CatalogEntry& e;
  const RunConfig& cfg;
  Context& ctx;
  ordered_json stages = ordered_json::array();
  ordered_json error;
  bool ok = true;

  template <class Body>
  void stage(const char* name, Body&& body) {
    if (!ok) return;
    ordered_json s;
    s["stage"] = name;
    try {
      std::string detail = body();
      s["ok"] = true;
      if (!detail.empty()) s["detail"] = detail;
    } catch (const Error& err) {
      s["ok"] = false;
      s["detail"] = err.what();
      error = ordered_json{{"kind", kind_name(err.kind())},
                           {"message", err.what()}};
      ok = false;
    }
    stages.push_back(std::move(s));
  }
};

void structural_stages(Stager& st) {
  const CatalogEntry& e = st.e;
  const RunConfig& cfg = st.cfg;
  Context& ctx = st.ctx;

  st.stage("jacobi", [&] {
    for (const LieAlgebra* a : {&e.n, &e.ks, &e.k}) {
      JacobiReport r = a->check_jacobi();
      if (!r.pass(cfg.eps))
        fail(ErrorKind::Construction,
             "'" + a->name() + "' violates the Jacobi identity at basis triple (" +
                 std::to_string(r.worst[0]) + ", " + std::to_string(r.worst[1]) +
                 ", " + std::to_string(r.worst[2]) + "), residual " +
                 fmt(r.max_residual));
    }
    return "n, kS and k all satisfy the Jacobi identity";
  });

  st.stage("action", [&] {
    e.action.validate(cfg.eps);
    return "kS acts on n by derivations and the action is a homomorphism";
  });

  st.stage("semidirect", [&] {
    ctx.sum = semidirect_sum(e.n, e.ks, e.action, cfg.eps);
    IntegrabilityReport r =
        verify_horizontal_integrability(ctx.sum->p, ctx.sum->n_dim);
    if (!r.pass(cfg.eps))
      fail(ErrorKind::Construction,
           "n is not an ideal of the semidirect sum (worst pair " +
               std::to_string(r.worst_pair[0]) + ", " +
               std::to_string(r.worst_pair[1]) + ")");
    return "semidirect sum built; n is an ideal, so the canonical "
           "distribution is integrable and the induced connection is flat";
  });

  st.stage("model", [&] {
    if (!e.has_model) return std::string("skipped: no matrix model provided");
    e.model.validate(*ctx.sum, cfg.eps);
    return std::string(
        "matrix model reproduces the structure constants and exp(s) "
        "conjugation preserves n");
  });
}

void hypothesis_stages(Stager& st) {
  const CatalogEntry& e = st.e;
  const RunConfig& cfg = st.cfg;
  Context& ctx = st.ctx;

  st.stage("hypotheses", [&] {
    if (!e.ks_connected)
      fail(ErrorKind::Unsupported,
           "kS is declared disconnected; averaging over components is not "
           "implemented, so invariance cannot be reduced to the Lie algebra");
    if (e.n.field() != Field::Complex)
      fail(ErrorKind::Unsupported,
           "n carries no complex structure; the holomorphic classification "
           "needs a complex n");
    ctx.nr = realify(e.n);
    if (e.dbeta.rows() != e.k.dim() || e.dbeta.cols() != e.ks.dim())
      fail(ErrorKind::Input, "dbeta must be a " + std::to_string(e.k.dim()) +
                                 " x " + std::to_string(e.ks.dim()) +
                                 " matrix");
    if (e.zeta.size() != e.ks.dim())
      fail(ErrorKind::Input, "zGenerator must have one coordinate per kS "
                             "basis vector");
    ctx.datum = HomomorphismDatum{e.ks, e.k, e.dbeta, e.zeta, e.w0};
    return std::string("kS connected, n complex, shapes consistent");
  });

  st.stage("zAction", [&] {
    ctx.datum->validate(e.action, cfg.eps);
    std::string src = e.z_declared ? "declared" : "candidate";
    return "dbeta is a homomorphism and the " + src +
           " circle generator is central and scales n by the single weight " +
           std::to_string(e.w0);
  });

  st.stage("weights", [&] {
    ctx.dec = isotypical_decompose(e.k, ctx.datum->dbeta_of(e.zeta), cfg.exact);
    if (ctx.dec->total_dim() != e.k.dim())
      fail(ErrorKind::Internal, "weight blocks do not fill k");
    if (ctx.dec->projector_sum_residual > 1e-9)
      fail(ErrorKind::Numeric,
           "weight projectors do not sum to the identity (residual " +
               fmt(ctx.dec->projector_sum_residual) + ")");
    if (!e.expected.block_weights.empty() &&
        ctx.dec->weights != e.expected.block_weights)
      fail(ErrorKind::Input,
           "computed circle weights on k differ from the declared list");
    std::ostringstream os;
    os << "k splits under the circle into weights {";
    for (std::size_t i = 0; i < ctx.dec->weights.size(); ++i)
      os << (i ? ", " : "") << ctx.dec->weights[i];
    os << "}";
    return os.str();
  });

  st.stage("invariants", [&] {
    ctx.invariants =
        invariant_subspace(*ctx.datum, e.action, *ctx.nr, cfg.exact, cfg.eps);
    if (e.expected.invariant_dim >= 0 &&
        ctx.invariants.size() !=
            static_cast<std::size_t>(e.expected.invariant_dim))
      fail(ErrorKind::Input,
           "invariant subspace has dimension " +
               std::to_string(ctx.invariants.size()) + ", expected " +
               std::to_string(e.expected.invariant_dim));
    for (const PairSpec& p : e.pairs) {
      CandidatePair cp{*ctx.datum, p.omega};
      cp.validate(e.action, *ctx.nr, cfg.eps);
    }
    return "invariant perturbations form a space of dimension " +
           std::to_string(ctx.invariants.size()) + "; all " +
           std::to_string(e.pairs.size()) + " declared pairs are invariant";
  });
}

// The classic all-or-nothing run used by validate and classify.
bool run_stages(Stager& st) {
  structural_stages(st);
  hypothesis_stages(st);
  return st.ok;
}

ordered_json base_report(const char* command, const CatalogEntry& e,
                         const RunConfig& cfg) {
  ordered_json j;
  j["command"] = command;
  j["id"] = e.id;
  j["arithmetic"] = cfg.exact ? "exact" : "float";
  return j;
}

RunResult rejected(ordered_json report, ordered_json stages,
                   ordered_json error) {
  ordered_json v;
  v["ok"] = false;
  v["stages"] = std::move(stages);
  report["validation"] = std::move(v);
  report["error"] = std::move(error);
  return RunResult{2, std::move(report)};
}

ordered_json certificate_json(const DbarCertificate& c, bool with_omega) {
  ordered_json j;
  j["w0"] = c.w0;
  j["dimN"] = c.dim_n;
  j["blockWeights"] = c.block_weights;
  j["blockDims"] = c.block_dims;
  j["projectorSumResidual"] = c.projector_sum_residual;
  if (with_omega) j["omegaWeightResidual"] = c.omega_weight_residual;
  j["vacuous"] = c.vacuous;
  j["verdict"] = c.verdict();
  return j;
}

const char* verdict_name(EquivalenceVerdict v) {
  switch (v) {
    case EquivalenceVerdict::Equivalent: return "equivalent";
    case EquivalenceVerdict::Inequivalent: return "inequivalent";
    case EquivalenceVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

}  // namespace

RunResult run_validate(const CatalogEntry& e, const RunConfig& cfg) {
  ordered_json report = base_report("validate", e, cfg);
  Context ctx;
  Stager st{e, cfg, ctx};
  bool ok = run_stages(st);
  report["stages"] = std::move(st.stages);
  report["ok"] = ok;
  if (!ok) {
    report["error"] = std::move(st.error);
    return RunResult{2, std::move(report)};
  }
  return RunResult{0, std::move(report)};
}

RunResult run_classify(const CatalogEntry& e, const RunConfig& cfg) {
  ordered_json report = base_report("classify", e, cfg);
  report["seed"] = cfg.seed;
  Context ctx;
  Stager st{e, cfg, ctx};
  if (!run_stages(st))
    return rejected(std::move(report), std::move(st.stages),
                    std::move(st.error));
  report["validation"] = ordered_json{{"ok", true}};

  try {
    ordered_json circle;
    circle["zGenerator"] = vec_to_json(e.zeta);
    circle["zWeightOnN"] = e.w0;
    circle["declared"] = e.z_declared;
    report["circle"] = std::move(circle);

    // entry-level certificate: the weight bookkeeping with no pair attached
    AntiHolMap zero{Mat(e.k.dim(), ctx.nr->complex_dim)};
    DbarCertificate base_cert =
        dbar_vanishing_certificate(*ctx.datum, zero, cfg.exact, cfg.eps);
    report["certificate"] = certificate_json(base_cert, false);

    // The moduli block lists an explicit basis of the invariant perturbation
    // space and probes each direction (and the zero element, which is always
    // an interior point) for membership in the quadratic cone.
    ordered_json moduli;
    moduli["invariantDim"] = ctx.invariants.size();
    ordered_json basis = ordered_json::array();
    ordered_json directions = ordered_json::array();
    for (std::size_t i = 0; i < ctx.invariants.size(); ++i) {
      basis.push_back(mat_to_json(ctx.invariants[i]));
      C0Report dc = c0_membership(*ctx.datum, *ctx.nr, ctx.invariants[i],
                                  cfg.exact, cfg.eps);
      directions.push_back(ordered_json{{"index", i},
                                        {"member", dc.member},
                                        {"residual", dc.residual}});
    }
    moduli["basis"] = std::move(basis);
    moduli["directions"] = std::move(directions);
    Mat zero_omega(e.k.dim(), ctx.nr->real.dim());
    C0Report zc =
        c0_membership(*ctx.datum, *ctx.nr, zero_omega, cfg.exact, cfg.eps);
    moduli["zeroElement"] = ordered_json{{"member", zc.member},
                                         {"residual", zc.residual}};
    report["moduli"] = std::move(moduli);

    if (cfg.beta_range) {
      bool ks_abelian = true;
      for (const BracketTerm& t : e.ks.table())
        if (t.c.approx() != std::complex<double>(0.0, 0.0))
          ks_abelian = false;
      if (!ks_abelian)
        fail(ErrorKind::Input,
             "the character sweep enumerates integer multiples of dbeta, "
             "which are homomorphisms only when kS is abelian; '" +
                 e.ks.name() + "' is not");
      ordered_json sweep;
      sweep["lo"] = cfg.beta_lo;
      sweep["hi"] = cfg.beta_hi;
      ordered_json rows = ordered_json::array();
      for (long m = cfg.beta_lo; m <= cfg.beta_hi; ++m) {
        HomomorphismDatum d{e.ks, e.k, e.dbeta.scaled(Scalar(Rational(m))),
                            e.zeta, e.w0};
        d.validate(e.action, cfg.eps);
        std::vector<Mat> inv =
            invariant_subspace(d, e.action, *ctx.nr, cfg.exact, cfg.eps);
        rows.push_back(ordered_json{{"m", m}, {"invariantDim", inv.size()}});
      }
      sweep["perCharacter"] = std::move(rows);
      report["betaRange"] = std::move(sweep);
    }

    bool mismatch = false;
    ordered_json pairs = ordered_json::array();
    std::vector<CandidatePair> cps;
    for (const PairSpec& p : e.pairs) {
      CandidatePair cp{*ctx.datum, p.omega};
      double inv_res = 0.0;
      for (std::size_t b = 0; b < e.ks.dim(); ++b)
        inv_res = std::max(
            inv_res, apply_action(*ctx.datum, e.action, *ctx.nr,
                                  e.ks.basis_vector(b), p.omega)
                         .max_abs());
      AntiHolMap a01 = real_to_antiholomorphic(p.omega, *ctx.nr);
      DbarCertificate cert =
          dbar_vanishing_certificate(*ctx.datum, a01, cfg.exact, cfg.eps);
      C0Report c0 = c0_membership(*ctx.datum, *ctx.nr, p.omega, cfg.exact,
                                  cfg.eps);
      TwoFormValued f02 = algebraic_curvature02(*ctx.datum, a01, cert);
      bool holo = c0.member;

      ordered_json pj;
      pj["pair-id"] = p.id;
      pj["invarianceResidual"] = inv_res;
      ordered_json cj;
      cj["omegaWeightResidual"] = cert.omega_weight_residual;
      cj["verdict"] = cert.verdict();
      pj["certificate"] = std::move(cj);
      pj["c0"] = ordered_json{{"member", c0.member},
                              {"residual", c0.residual}};
      pj["maxF02"] = f02.max_abs();
      pj["holomorphic"] = holo;
      if (p.expect_known) {
        pj["expected"] = p.expect_holomorphic;
        pj["match"] = holo == p.expect_holomorphic;
        if (holo != p.expect_holomorphic) mismatch = true;
      }
      pairs.push_back(std::move(pj));
      cps.push_back(std::move(cp));
    }
    report["pairs"] = std::move(pairs);

    if (cps.size() >= 2) {
      EquivalenceOptions opts;
      opts.eps = cfg.eps;
      opts.seed = cfg.seed;
      ordered_json comparisons = ordered_json::array();
      std::vector<std::size_t> parent(cps.size());
      for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
      auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
      };
      for (std::size_t i = 0; i < cps.size(); ++i)
        for (std::size_t j = i + 1; j < cps.size(); ++j) {
          EquivalenceResult r = equivalent_pairs(cps[i], cps[j], opts);
          ordered_json cmp;
          cmp["first"] = e.pairs[i].id;
          cmp["second"] = e.pairs[j].id;
          cmp["verdict"] = verdict_name(r.verdict);
          if (r.verdict == EquivalenceVerdict::Equivalent) {
            cmp["witnessError"] = r.witness_error;
            parent[find(i)] = find(j);
          } else if (r.verdict == EquivalenceVerdict::Inequivalent) {
            cmp["separator"] = r.separator;
            cmp["separation"] = r.separation;
          }
          comparisons.push_back(std::move(cmp));
        }
      ordered_json classes = ordered_json::array();
      for (std::size_t i = 0; i < cps.size(); ++i) {
        if (find(i) != i) continue;
        ordered_json cls = ordered_json::array();
        for (std::size_t j = 0; j < cps.size(); ++j)
          if (find(j) == find(i)) cls.push_back(e.pairs[j].id);
        classes.push_back(std::move(cls));
      }
      report["equivalence"] = ordered_json{
          {"comparisons", std::move(comparisons)},
          {"classes", std::move(classes)}};
    }

    return RunResult{mismatch ? 3 : 0, std::move(report)};
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Internal) throw;
    report["error"] = ordered_json{{"kind", kind_name(err.kind())},
                                   {"message", err.what()}};
    return RunResult{2, std::move(report)};
  }
}

RunResult run_verify(const CatalogEntry& e, const RunConfig& cfg) {
  ordered_json report = base_report("verify", e, cfg);
  report["grid"] = cfg.grid;
  report["h"] = cfg.step;
  report["seed"] = cfg.seed;
  Context ctx;
  Stager st{e, cfg, ctx};
  structural_stages(st);
  if (!st.ok)
    return rejected(std::move(report), std::move(st.stages),
                    std::move(st.error));
  // A failed circle hypothesis only gates the holomorphic side; the flat
  // connection exists on any semidirect product, so the differential checks
  // below still run and the report says exactly what was skipped.
  hypothesis_stages(st);
  bool hypotheses_ok = st.ok;
  if (hypotheses_ok)
    report["validation"] = ordered_json{{"ok", true}};
  else
    report["validation"] =
        ordered_json{{"ok", false}, {"stages", st.stages}};

  try {
    if (!e.has_model)
      fail(ErrorKind::Unsupported,
           "verification differentiates through a matrix model of the group "
           "and this entry does not provide one");

    const SemidirectSum& sum = *ctx.sum;
    std::vector<Eigen::VectorXd> pts =
        sample_grid(sum.n_dim, cfg.grid, cfg.half_width, cfg.max_points);

    ConsistencyReport mc =
        model_consistency(sum, e.model, 8, cfg.step, cfg.seed);
    report["model"] = ordered_json{
        {"ambient", e.model.ambient},
        {"consistencyResidual", mc.max_residual}};

    GaugeField rho_s{sum.n_dim, sum.s_dim};
    FlatnessReport coarse =
        tautological_flatness(sum, e.model, rho_s, pts, cfg.step);
    FlatnessReport fine =
        tautological_flatness(sum, e.model, rho_s, pts, cfg.step / 2);
    ordered_json fl;
    fl["residual"] = coarse.max_residual;
    fl["fineResidual"] = fine.max_residual;
    fl["ratio"] = fine.max_residual > 0.0
                      ? coarse.max_residual / fine.max_residual
                      : 0.0;
    fl["splitResidual"] = coarse.split_residual;
    fl["points"] = pts.size();
    report["tautologicalFlatness"] = std::move(fl);

    InvarianceReport ir = tautological_invariance(sum, e.model, rho_s,
                                                  cfg.samples, cfg.step,
                                                  cfg.seed);
    report["invariance"] = ordered_json{{"residual", ir.max_residual},
                                        {"samples", ir.samples}};

    if (!hypotheses_ok) {
      report["holomorphicity"] = ordered_json{
          {"gated", true}, {"reason", st.error["message"]}};
      report["error"] = std::move(st.error);
      return RunResult{2, std::move(report)};
    }

    bool disagree = false;
    ordered_json pairs = ordered_json::array();
    GaugeField rho_k{sum.n_dim, e.k.dim()};
    for (const PairSpec& p : e.pairs) {
      PairCurvatureReport pc =
          pair_curvature(e.k, *ctx.nr, p.omega, rho_k, pts, cfg.step);
      C0Report c0 = c0_membership(*ctx.datum, *ctx.nr, p.omega, cfg.exact,
                                  cfg.eps);
      bool holo_num = pc.holomorphic(1e-6);
      bool agree = (holo_num == c0.member) && pc.max_f02_gap < 1e-6;
      ordered_json pj;
      pj["pair-id"] = p.id;
      pj["maxF02"] = pc.max_f02;
      pj["f02Gap"] = pc.max_f02_gap;
      pj["totalGap"] = pc.max_total_gap;
      pj["maxF11"] = pc.max_f11;
      pj["holomorphic"] = holo_num;
      pj["c0"] = ordered_json{{"member", c0.member},
                              {"residual", c0.residual}};
      pj["agree"] = agree;
      if (!agree) disagree = true;
      pairs.push_back(std::move(pj));
    }
    report["pairs"] = std::move(pairs);

    return RunResult{disagree ? 3 : 0, std::move(report)};
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::Internal) throw;
    report["error"] = ordered_json{{"kind", kind_name(err.kind())},
                                   {"message", err.what()}};
    return RunResult{2, std::move(report)};
  }
}

}  // namespace invconn
