#include "invconn/invconn.h"

#include "catalog.hpp"
#include "errors.hpp"
#include "pipeline.hpp"
#include "specfile.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct ivc_options {
  invconn::RunConfig cfg;
};

struct ivc_problem {
  invconn::CatalogEntry entry;
};

struct ivc_report {
  invconn::RunResult result;
};

namespace {

thread_local std::string g_last_error;

ivc_status status_of(invconn::ErrorKind k) {
  using invconn::ErrorKind;
  switch (k) {
    case ErrorKind::Input: return IVC_ERR_INPUT;
    case ErrorKind::Parse: return IVC_ERR_PARSE;
    case ErrorKind::Construction: return IVC_ERR_CONSTRUCTION;
    case ErrorKind::Hypothesis: return IVC_ERR_HYPOTHESIS;
    case ErrorKind::Unsupported: return IVC_ERR_UNSUPPORTED;
    case ErrorKind::Numeric: return IVC_ERR_NUMERIC;
    case ErrorKind::Internal: return IVC_ERR_INTERNAL;
  }
  return IVC_ERR_INTERNAL;
}

template <typename F>
ivc_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const invconn::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return IVC_ERR_NOMEM;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IVC_ERR_INTERNAL;
  }
}

invconn::RunConfig config_of(const ivc_options* o) {
  return o ? o->cfg : invconn::RunConfig{};
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ivc_status emit_problem(invconn::CatalogEntry entry, ivc_problem** out) {
  if (!out) {
    g_last_error = "out pointer is null";
    return IVC_ERR_INPUT;
  }
  *out = new ivc_problem{std::move(entry)};
  return IVC_OK;
}

template <typename Runner>
ivc_status run_command(const ivc_problem* p, const ivc_options* o,
                       ivc_report** out, Runner runner) {
  return guarded([&]() -> ivc_status {
    if (!p || !out) {
      g_last_error = "problem and out pointers must not be null";
      return IVC_ERR_INPUT;
    }
    *out = new ivc_report{runner(p->entry, config_of(o))};
    return IVC_OK;
  });
}

}  // namespace

extern "C" {

const char* ivc_last_error(void) { return g_last_error.c_str(); }

ivc_options* ivc_options_new(void) { return new (std::nothrow) ivc_options{}; }

void ivc_options_free(ivc_options* o) { delete o; }

ivc_status ivc_options_set_mode(ivc_options* o, const char* mode) {
  return guarded([&]() -> ivc_status {
    if (!o || !mode) {
      g_last_error = "options and mode must not be null";
      return IVC_ERR_INPUT;
    }
    std::string m = mode;
    if (m == "exact")
      o->cfg.exact = true;
    else if (m == "float")
      o->cfg.exact = false;
    else {
      g_last_error = "mode must be \"exact\" or \"float\"";
      return IVC_ERR_INPUT;
    }
    return IVC_OK;
  });
}

ivc_status ivc_options_set_eps(ivc_options* o, double eps) {
  if (!o || !(eps > 0.0)) {
    g_last_error = "eps must be positive";
    return IVC_ERR_INPUT;
  }
  o->cfg.eps = eps;
  return IVC_OK;
}

ivc_status ivc_options_set_grid(ivc_options* o, size_t per_axis) {
  if (!o || per_axis < 2) {
    g_last_error = "grid needs at least 2 points per axis";
    return IVC_ERR_INPUT;
  }
  o->cfg.grid = per_axis;
  return IVC_OK;
}

ivc_status ivc_options_set_step(ivc_options* o, double h) {
  if (!o || !(h > 0.0)) {
    g_last_error = "step must be positive";
    return IVC_ERR_INPUT;
  }
  o->cfg.step = h;
  return IVC_OK;
}

ivc_status ivc_options_set_seed(ivc_options* o, uint64_t seed) {
  if (!o) {
    g_last_error = "options must not be null";
    return IVC_ERR_INPUT;
  }
  o->cfg.seed = seed;
  return IVC_OK;
}

ivc_status ivc_options_set_samples(ivc_options* o, size_t samples) {
  if (!o || samples == 0) {
    g_last_error = "samples must be positive";
    return IVC_ERR_INPUT;
  }
  o->cfg.samples = samples;
  return IVC_OK;
}

ivc_status ivc_options_set_beta_range(ivc_options* o, long lo, long hi) {
  if (!o || lo > hi) {
    g_last_error = "beta range needs lo <= hi";
    return IVC_ERR_INPUT;
  }
  o->cfg.beta_range = true;
  o->cfg.beta_lo = lo;
  o->cfg.beta_hi = hi;
  return IVC_OK;
}

size_t ivc_catalog_size(void) { return invconn::catalog_ids().size(); }

const char* ivc_catalog_id(size_t index) {
  const auto& ids = invconn::catalog_ids();
  if (index >= ids.size()) return nullptr;
  return ids[index].c_str();
}

ivc_status ivc_export_entry(const char* id, int indent, char** out) {
  return guarded([&]() -> ivc_status {
    if (!id || !out) {
      g_last_error = "id and out must not be null";
      return IVC_ERR_INPUT;
    }
    invconn::ordered_json j =
        invconn::entry_to_json(invconn::build_entry(id));
    *out = dup_string(j.dump(indent < 0 ? -1 : indent));
    if (!*out) {
      g_last_error = "out of memory";
      return IVC_ERR_NOMEM;
    }
    return IVC_OK;
  });
}

ivc_status ivc_export_catalog(int indent, char** out) {
  return guarded([&]() -> ivc_status {
    if (!out) {
      g_last_error = "out must not be null";
      return IVC_ERR_INPUT;
    }
    invconn::ordered_json arr = invconn::ordered_json::array();
    for (const std::string& id : invconn::catalog_ids())
      arr.push_back(invconn::entry_to_json(invconn::build_entry(id)));
    *out = dup_string(arr.dump(indent < 0 ? -1 : indent));
    if (!*out) {
      g_last_error = "out of memory";
      return IVC_ERR_NOMEM;
    }
    return IVC_OK;
  });
}

ivc_status ivc_problem_from_catalog(const char* id, const ivc_options*,
                                    ivc_problem** out) {
  return guarded([&]() -> ivc_status {
    if (!id) {
      g_last_error = "id must not be null";
      return IVC_ERR_INPUT;
    }
    return emit_problem(invconn::build_entry(id), out);
  });
}

ivc_status ivc_problem_from_file(const char* path, const ivc_options* o,
                                 ivc_problem** out) {
  return guarded([&]() -> ivc_status {
    if (!path) {
      g_last_error = "path must not be null";
      return IVC_ERR_INPUT;
    }
    return emit_problem(
        invconn::load_entry_file(path, config_of(o).exact), out);
  });
}

ivc_status ivc_problem_from_json(const char* text, const ivc_options* o,
                                 ivc_problem** out) {
  return guarded([&]() -> ivc_status {
    if (!text) {
      g_last_error = "text must not be null";
      return IVC_ERR_INPUT;
    }
    invconn::ordered_json j;
    try {
      j = invconn::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      g_last_error = e.what();
      return IVC_ERR_PARSE;
    }
    return emit_problem(invconn::entry_from_json(j, config_of(o).exact), out);
  });
}

const char* ivc_problem_id(const ivc_problem* p) {
  return p ? p->entry.id.c_str() : nullptr;
}

ivc_status ivc_problem_add_pair_file(ivc_problem* p, const char* path,
                                     const ivc_options* o) {
  return guarded([&]() -> ivc_status {
    if (!p || !path) {
      g_last_error = "problem and path must not be null";
      return IVC_ERR_INPUT;
    }
    invconn::PairFileData d =
        invconn::load_pair_file(path, config_of(o).exact);
    for (const invconn::PairSpec& ps : p->entry.pairs)
      if (ps.id == d.id) {
        g_last_error = std::string("entry '") + p->entry.id +
                       "' already declares a pair named '" + d.id + "'";
        return IVC_ERR_INPUT;
      }
    if (d.has_beta) {
      // the file describes a full (beta, omega) pair: re-base the problem on
      // that homomorphism and drop data that was only true for the old one
      p->entry.dbeta = d.dbeta;
      p->entry.zeta = d.zeta;
      p->entry.w0 = d.w0;
      p->entry.z_declared = true;
      p->entry.pairs.clear();
      p->entry.expected = invconn::ExpectedFacts{};
    }
    invconn::PairSpec ps;
    ps.id = d.id;
    ps.omega = d.omega;
    ps.expect_known = d.has_expect;
    ps.expect_holomorphic = d.expect_holomorphic;
    p->entry.pairs.push_back(std::move(ps));
    return IVC_OK;
  });
}

ivc_status ivc_problem_select_pair(ivc_problem* p, const char* pair_id) {
  return guarded([&]() -> ivc_status {
    if (!p || !pair_id) {
      g_last_error = "problem and pair_id must not be null";
      return IVC_ERR_INPUT;
    }
    for (const invconn::PairSpec& ps : p->entry.pairs) {
      if (ps.id == pair_id) {
        invconn::PairSpec kept = ps;
        p->entry.pairs.assign(1, std::move(kept));
        return IVC_OK;
      }
    }
    g_last_error = std::string("entry '") + p->entry.id +
                   "' declares no pair named '" + pair_id + "'";
    return IVC_ERR_INPUT;
  });
}

void ivc_problem_free(ivc_problem* p) { delete p; }

ivc_status ivc_run_validate(const ivc_problem* p, const ivc_options* o,
                            ivc_report** out) {
  return run_command(p, o, out, invconn::run_validate);
}

ivc_status ivc_run_classify(const ivc_problem* p, const ivc_options* o,
                            ivc_report** out) {
  return run_command(p, o, out, invconn::run_classify);
}

ivc_status ivc_run_verify(const ivc_problem* p, const ivc_options* o,
                          ivc_report** out) {
  return run_command(p, o, out, invconn::run_verify);
}

int ivc_report_exit_code(const ivc_report* r) {
  return r ? r->result.exit_code : -1;
}

char* ivc_report_json(const ivc_report* r, int indent) {
  if (!r) return nullptr;
  try {
    return dup_string(r->result.report.dump(indent < 0 ? -1 : indent));
  } catch (...) {
    return nullptr;
  }
}

void ivc_report_free(ivc_report* r) { delete r; }

void ivc_string_free(char* s) { std::free(s); }

}  // extern "C"
