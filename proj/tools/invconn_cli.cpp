// Command-line front end.  Talks to the library exclusively through the C
// interface so that it doubles as a smoke test of the shared object.

#include <invconn/invconn.h>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct CommonOpts {
  std::string catalog_id;
  std::string input;
  std::string mode = "exact";
  std::string out;
  std::string pair;
  std::string pair_file;
  std::string beta_range;
  double eps = 1e-9;
  double step = 1e-4;
  std::size_t grid = 5;
  std::size_t samples = 12;
  std::uint64_t seed = 12345;
};

// "--beta-range LO:HI", e.g. -3:3.
bool parse_range(const std::string& s, long& lo, long& hi) {
  std::size_t colon = s.find(':');
  if (colon == std::string::npos) return false;
  try {
    std::size_t used = 0;
    lo = std::stol(s.substr(0, colon), &used);
    if (used != colon) return false;
    std::string rest = s.substr(colon + 1);
    hi = std::stol(rest, &used);
    return used == rest.size();
  } catch (const std::exception&) {
    return false;
  }
}

void add_source_options(CLI::App* cmd, CommonOpts& c) {
  auto* cat = cmd->add_option("--catalog", c.catalog_id,
                              "built-in catalog entry id");
  auto* inp = cmd->add_option("--input", c.input, "entry description file");
  cat->excludes(inp);
  inp->excludes(cat);
  cmd->add_option("--mode", c.mode, "arithmetic: exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--eps", c.eps, "tolerance for structural residuals");
  cmd->add_option("--out", c.out, "write the report here instead of stdout");
}

int hard_error(const std::string& what) {
  std::cerr << "error: " << what << ": " << ivc_last_error() << "\n";
  return 1;
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open '" << out << "' for writing\n";
    return 1;
  }
  f << text << "\n";
  return f.good() ? 0 : 1;
}

struct OptionsHandle {
  ivc_options* ptr = ivc_options_new();
  ~OptionsHandle() { ivc_options_free(ptr); }
};

int configure(ivc_options* o, const CommonOpts& c) {
  if (!o) return 1;
  if (ivc_options_set_mode(o, c.mode.c_str()) != IVC_OK ||
      ivc_options_set_eps(o, c.eps) != IVC_OK ||
      ivc_options_set_grid(o, c.grid) != IVC_OK ||
      ivc_options_set_step(o, c.step) != IVC_OK ||
      ivc_options_set_seed(o, c.seed) != IVC_OK ||
      ivc_options_set_samples(o, c.samples) != IVC_OK)
    return hard_error("bad options");
  if (!c.beta_range.empty()) {
    long lo = 0, hi = 0;
    if (!parse_range(c.beta_range, lo, hi)) {
      std::cerr << "error: --beta-range wants two integers LO:HI, e.g. "
                   "--beta-range=-3:3\n";
      return 1;
    }
    if (ivc_options_set_beta_range(o, lo, hi) != IVC_OK)
      return hard_error("bad options");
  }
  return 0;
}

using RunFn = ivc_status (*)(const ivc_problem*, const ivc_options*,
                             ivc_report**);

int run_command(const CommonOpts& c, RunFn run) {
  if (c.catalog_id.empty() && c.input.empty()) {
    std::cerr << "error: one of --catalog or --input is required\n";
    return 1;
  }
  OptionsHandle opts;
  if (int rc = configure(opts.ptr, c)) return rc;

  ivc_problem* prob = nullptr;
  ivc_status st =
      c.input.empty()
          ? ivc_problem_from_catalog(c.catalog_id.c_str(), opts.ptr, &prob)
          : ivc_problem_from_file(c.input.c_str(), opts.ptr, &prob);
  if (st != IVC_OK) return hard_error("cannot load entry");

  if (!c.pair_file.empty() &&
      ivc_problem_add_pair_file(prob, c.pair_file.c_str(), opts.ptr) !=
          IVC_OK) {
    ivc_problem_free(prob);
    return hard_error("cannot load pair file");
  }

  if (!c.pair.empty() &&
      ivc_problem_select_pair(prob, c.pair.c_str()) != IVC_OK) {
    ivc_problem_free(prob);
    return hard_error("cannot select pair");
  }

  ivc_report* rep = nullptr;
  st = run(prob, opts.ptr, &rep);
  ivc_problem_free(prob);
  if (st != IVC_OK) return hard_error("run failed");

  char* text = ivc_report_json(rep, 2);
  int code = ivc_report_exit_code(rep);
  int wr = text ? emit(text, c.out) : 1;
  ivc_string_free(text);
  ivc_report_free(rep);
  return wr != 0 ? wr : code;
}

int run_export(const std::string& id, const std::string& out) {
  char* text = nullptr;
  ivc_status st =
      id.empty() ? ivc_export_catalog(2, &text) : ivc_export_entry(id.c_str(), 2, &text);
  if (st != IVC_OK) return hard_error("export failed");
  int rc = emit(text, out);
  ivc_string_free(text);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "classification of invariant holomorphic structures on homogeneous "
      "principal bundles"};
  app.require_subcommand(1);

  CommonOpts v, cl, ve;
  CLI::App* validate = app.add_subcommand(
      "validate", "check an entry against every structural hypothesis");
  add_source_options(validate, v);

  CLI::App* classify = app.add_subcommand(
      "classify",
      "weight decomposition, vanishing certificate, holomorphicity and "
      "equivalence of declared pairs");
  add_source_options(classify, cl);
  classify->add_option("--pair", cl.pair, "restrict to one declared pair");
  classify->add_option("--pair-file", cl.pair_file,
                       "add a candidate pair from a JSON file");
  classify->add_option("--seed", cl.seed, "seed for the orbit alignment");
  classify->add_option(
      "--beta-range", cl.beta_range,
      "also sweep the homomorphism over integer multiples LO:HI");

  CLI::App* verify = app.add_subcommand(
      "verify",
      "finite-difference cross-checks of flatness, invariance and curvature "
      "through the matrix model");
  add_source_options(verify, ve);
  verify->add_option("--pair", ve.pair, "restrict to one declared pair");
  verify->add_option("--pair-file", ve.pair_file,
                     "add a candidate pair from a JSON file");
  verify->add_option("--grid", ve.grid, "lattice points per axis");
  verify->add_option("--step", ve.step, "finite-difference step");
  verify->add_option("--seed", ve.seed, "seed for sampled group elements");
  verify->add_option("--samples", ve.samples,
                     "group elements for the invariance probe");

  std::string export_id, export_out;
  CLI::App* exp = app.add_subcommand("export-catalog",
                                     "dump built-in entries as JSON");
  exp->add_option("--id", export_id, "export a single entry");
  exp->add_option("--out", export_out, "write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return run_command(v, ivc_run_validate);
  if (classify->parsed()) return run_command(cl, ivc_run_classify);
  if (verify->parsed()) return run_command(ve, ivc_run_verify);
  if (exp->parsed()) return run_export(export_id, export_out);
  return 1;
}
