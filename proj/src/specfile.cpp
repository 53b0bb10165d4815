#include "specfile.hpp"

#include "errors.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace invconn {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& msg) {
  fail(ErrorKind::Parse, where + ": " + msg);
}

const ordered_json& need(const ordered_json& j, const char* key,
                         const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

// real literal: integer, "p/q" string, or (in float mode) a plain number
struct RealLit {
  bool exact = true;
  Rational r;
  double d = 0.0;
};

RealLit real_from_json(const ordered_json& v, bool exact_mode,
                       const std::string& where) {
  RealLit out;
  if (v.is_number_integer()) {
    out.r = Rational(v.get<long long>());
    return out;
  }
  if (v.is_string()) {
    out.r = parse_rational(v.get<std::string>());
    return out;
  }
  if (v.is_number_float()) {
    if (exact_mode)
      parse_fail(where, "floating literal " + v.dump() +
                            " is not allowed in exact mode; write \"p/q\"");
    out.exact = false;
    out.d = v.get<double>();
    return out;
  }
  parse_fail(where, "expected a number or \"p/q\" string, got " + v.dump());
}

}  // namespace

Scalar scalar_from_json(const ordered_json& v, bool exact_mode,
                        const std::string& where) {
  if (v.is_array()) {
    if (v.size() != 2)
      parse_fail(where, "complex literal must be [re, im]");
    RealLit re = real_from_json(v[0], exact_mode, where + "[0]");
    RealLit im = real_from_json(v[1], exact_mode, where + "[1]");
    if (re.exact && im.exact) return Scalar(re.r, im.r);
    double dr = re.exact ? static_cast<double>(re.r) : re.d;
    double di = im.exact ? static_cast<double>(im.r) : im.d;
    return Scalar::floating(dr, di);
  }
  RealLit re = real_from_json(v, exact_mode, where);
  if (re.exact) return Scalar(re.r);
  return Scalar::floating(re.d);
}

ordered_json scalar_to_json(const Scalar& s) {
  auto real_part = [](const Rational& r) -> ordered_json {
    if (boost::multiprecision::denominator(r) == 1) {
      const auto& num = boost::multiprecision::numerator(r);
      if (num >= std::numeric_limits<long long>::min() &&
          num <= std::numeric_limits<long long>::max())
        return ordered_json(num.convert_to<long long>());
    }
    std::ostringstream os;
    os << r;
    return ordered_json(os.str());
  };
  if (s.exact()) {
    if (s.exact_im() == 0) return real_part(s.exact_re());
    return ordered_json::array({real_part(s.exact_re()), real_part(s.exact_im())});
  }
  std::complex<double> z = s.approx();
  if (z.imag() == 0.0) return ordered_json(z.real());
  return ordered_json::array({ordered_json(z.real()), ordered_json(z.imag())});
}

Vec vec_from_json(const ordered_json& v, bool exact_mode,
                  const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected an array");
  Vec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(scalar_from_json(v[i], exact_mode,
                                   where + "[" + std::to_string(i) + "]"));
  return out;
}

ordered_json vec_to_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (const Scalar& s : v) a.push_back(scalar_to_json(s));
  return a;
}

Mat mat_from_json(const ordered_json& v, bool exact_mode,
                  const std::string& where) {
  if (!v.is_array() || v.empty())
    parse_fail(where, "expected a non-empty array of rows");
  std::size_t cols = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (!v[r].is_array())
      parse_fail(where + "[" + std::to_string(r) + "]", "expected a row array");
    if (r == 0)
      cols = v[r].size();
    else if (v[r].size() != cols)
      parse_fail(where + "[" + std::to_string(r) + "]",
                 "row length differs from the first row");
  }
  if (cols == 0) parse_fail(where, "rows must not be empty");
  Mat m(v.size(), cols);
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = scalar_from_json(v[r][c], exact_mode,
                                 where + "[" + std::to_string(r) + "][" +
                                     std::to_string(c) + "]");
  return m;
}

ordered_json mat_to_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

LieAlgebra algebra_from_json(const ordered_json& j, bool exact_mode,
                             const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  std::string name = j.value("name", where);
  std::string field_s = need(j, "field", where).get<std::string>();
  Field field;
  if (field_s == "real")
    field = Field::Real;
  else if (field_s == "complex")
    field = Field::Complex;
  else
    parse_fail(where + ".field", "expected \"real\" or \"complex\"");
  std::size_t dim = need(j, "dim", where).get<std::size_t>();

  std::vector<std::string> labels;
  if (j.contains("basis")) {
    for (const auto& l : j.at("basis")) labels.push_back(l.get<std::string>());
    if (labels.size() != dim)
      parse_fail(where + ".basis", "expected one label per basis vector");
  } else {
    for (std::size_t i = 0; i < dim; ++i)
      labels.push_back("e" + std::to_string(i + 1));
  }

  std::vector<BracketTerm> table;
  if (j.contains("brackets")) {
    const auto& br = j.at("brackets");
    std::set<std::array<std::size_t, 3>> seen;
    for (std::size_t t = 0; t < br.size(); ++t) {
      std::string w = where + ".brackets[" + std::to_string(t) + "]";
      BracketTerm term;
      term.i = need(br[t], "i", w).get<std::size_t>();
      term.j = need(br[t], "j", w).get<std::size_t>();
      term.k = need(br[t], "k", w).get<std::size_t>();
      if (!seen.insert({term.i, term.j, term.k}).second)
        parse_fail(w, "duplicate bracket entry for (" +
                          std::to_string(term.i) + ", " +
                          std::to_string(term.j) + ", " +
                          std::to_string(term.k) + ")");
      term.c = scalar_from_json(need(br[t], "c", w), exact_mode, w + ".c");
      table.push_back(std::move(term));
    }
  }
  LieAlgebra a = LieAlgebra::from_structure(std::move(name), field, dim,
                                            std::move(labels), std::move(table));
  if (j.contains("model")) {
    std::vector<Mat> mats;
    const auto& mj = j.at("model");
    for (std::size_t t = 0; t < mj.size(); ++t)
      mats.push_back(mat_from_json(mj[t], exact_mode,
                                   where + ".model[" + std::to_string(t) + "]"));
    if (mats.size() != dim)
      parse_fail(where + ".model", "expected one matrix per basis vector");
    a.set_model(std::move(mats));
  }
  return a;
}

ordered_json algebra_to_json(const LieAlgebra& a) {
  ordered_json j;
  j["name"] = a.name();
  j["field"] = a.field() == Field::Real ? "real" : "complex";
  j["dim"] = a.dim();
  j["basis"] = a.labels();
  ordered_json br = ordered_json::array();
  for (const BracketTerm& t : a.table()) {
    ordered_json term;
    term["i"] = t.i;
    term["j"] = t.j;
    term["k"] = t.k;
    term["c"] = scalar_to_json(t.c);
    br.push_back(std::move(term));
  }
  j["brackets"] = std::move(br);
  if (a.model()) {
    ordered_json mats = ordered_json::array();
    for (const Mat& m : *a.model()) mats.push_back(mat_to_json(m));
    j["model"] = std::move(mats);
  }
  return j;
}

}  // namespace

CatalogEntry entry_from_json(const ordered_json& j, bool exact_mode) {
  if (!j.is_object()) fail(ErrorKind::Parse, "entry: expected a JSON object");
  CatalogEntry e;
  e.id = need(j, "id", "entry").get<std::string>();
  e.title = j.value("title", "");
  e.n = algebra_from_json(need(j, "n", "entry"), exact_mode, "n");
  e.ks = algebra_from_json(need(j, "kS", "entry"), exact_mode, "kS");

  const auto& act = need(j, "action", "entry");
  if (!act.is_array() || act.size() != e.ks.dim())
    fail(ErrorKind::Parse, "action: expected one matrix per kS basis vector");
  std::vector<Mat> mats;
  for (std::size_t t = 0; t < act.size(); ++t)
    mats.push_back(mat_from_json(act[t], exact_mode,
                                 "action[" + std::to_string(t) + "]"));
  e.action = DerivationAction{e.ks, e.n, std::move(mats)};

  e.ks_connected = j.value("kSConnected", true);

  if (j.contains("model")) {
    const auto& mj = j.at("model");
    e.has_model = true;
    e.model.ambient = need(mj, "ambient", "model").get<std::size_t>();
    for (std::size_t t = 0; t < mj.at("nBasis").size(); ++t)
      e.model.n_basis.push_back(mat_from_json(
          mj.at("nBasis")[t], exact_mode, "model.nBasis[" + std::to_string(t) + "]"));
    for (std::size_t t = 0; t < mj.at("sBasis").size(); ++t)
      e.model.s_basis.push_back(mat_from_json(
          mj.at("sBasis")[t], exact_mode, "model.sBasis[" + std::to_string(t) + "]"));
  }

  e.k = algebra_from_json(need(j, "k", "entry"), exact_mode, "k");
  e.dbeta = mat_from_json(need(need(j, "beta", "entry"), "dbeta", "beta"),
                          exact_mode, "beta.dbeta");

  bool has_data = j.contains("zData"), has_cand = j.contains("zCandidate");
  if (has_data == has_cand)
    fail(ErrorKind::Parse, "entry: exactly one of zData / zCandidate required");
  const ordered_json& z = has_data ? j.at("zData") : j.at("zCandidate");
  const char* zw = has_data ? "zData" : "zCandidate";
  e.z_declared = has_data;
  e.zeta = vec_from_json(need(z, "zGenerator", zw), exact_mode,
                         std::string(zw) + ".zGenerator");
  e.w0 = need(z, "zWeightOnN", zw).get<int>();

  if (j.contains("pairs")) {
    const auto& ps = j.at("pairs");
    for (std::size_t t = 0; t < ps.size(); ++t) {
      std::string w = "pairs[" + std::to_string(t) + "]";
      PairSpec p;
      p.id = need(ps[t], "id", w).get<std::string>();
      p.omega = mat_from_json(need(ps[t], "omega", w), exact_mode, w + ".omega");
      p.expect_known = ps[t].contains("expectHolomorphic");
      p.expect_holomorphic = ps[t].value("expectHolomorphic", false);
      e.pairs.push_back(std::move(p));
    }
  }

  if (j.contains("expected")) {
    const auto& ex = j.at("expected");
    if (ex.contains("invariantDim"))
      e.expected.invariant_dim = ex.at("invariantDim").get<int>();
    if (ex.contains("blockWeights"))
      for (const auto& w : ex.at("blockWeights"))
        e.expected.block_weights.push_back(w.get<long>());
  }
  return e;
}

ordered_json entry_to_json(const CatalogEntry& e) {
  ordered_json j;
  j["id"] = e.id;
  j["title"] = e.title;
  j["n"] = algebra_to_json(e.n);
  j["kS"] = algebra_to_json(e.ks);
  ordered_json act = ordered_json::array();
  for (const Mat& m : e.action.act) act.push_back(mat_to_json(m));
  j["action"] = std::move(act);
  j["kSConnected"] = e.ks_connected;
  if (e.has_model) {
    ordered_json mj;
    mj["ambient"] = e.model.ambient;
    ordered_json nb = ordered_json::array(), sb = ordered_json::array();
    for (const Mat& m : e.model.n_basis) nb.push_back(mat_to_json(m));
    for (const Mat& m : e.model.s_basis) sb.push_back(mat_to_json(m));
    mj["nBasis"] = std::move(nb);
    mj["sBasis"] = std::move(sb);
    j["model"] = std::move(mj);
  }
  j["k"] = algebra_to_json(e.k);
  j["beta"] = ordered_json{{"dbeta", mat_to_json(e.dbeta)}};
  ordered_json z;
  z["zGenerator"] = vec_to_json(e.zeta);
  z["zWeightOnN"] = e.w0;
  j[e.z_declared ? "zData" : "zCandidate"] = std::move(z);
  ordered_json ps = ordered_json::array();
  for (const PairSpec& p : e.pairs) {
    ordered_json pj;
    pj["id"] = p.id;
    pj["omega"] = mat_to_json(p.omega);
    if (p.expect_known) pj["expectHolomorphic"] = p.expect_holomorphic;
    ps.push_back(std::move(pj));
  }
  j["pairs"] = std::move(ps);
  ordered_json ex;
  if (e.expected.invariant_dim >= 0)
    ex["invariantDim"] = e.expected.invariant_dim;
  if (!e.expected.block_weights.empty())
    ex["blockWeights"] = e.expected.block_weights;
  if (!ex.is_null()) j["expected"] = std::move(ex);
  return j;
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    // convert the byte offset into line:column
    std::size_t byte = err.byte > 0 ? err.byte - 1 : 0;
    if (byte > text.size()) byte = text.size();
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = err.what();
    std::size_t cut = what.find("; ");
    fail(ErrorKind::Parse,
         path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
             (cut == std::string::npos ? what : what.substr(cut + 2)));
  }
}

CatalogEntry load_entry_file(const std::string& path, bool exact_mode) {
  return entry_from_json(load_json_file(path), exact_mode);
}

PairFileData load_pair_file(const std::string& path, bool exact_mode) {
  ordered_json j = load_json_file(path);
  PairFileData p;
  p.id = need(j, "id", "pair").get<std::string>();
  p.omega = mat_from_json(need(j, "omega", "pair"), exact_mode, "omega");
  if (j.contains("beta")) {
    const auto& b = j.at("beta");
    p.has_beta = true;
    p.dbeta = mat_from_json(need(b, "dbeta", "beta"), exact_mode, "beta.dbeta");
    p.zeta = vec_from_json(need(b, "zGenerator", "beta"), exact_mode,
                           "beta.zGenerator");
    p.w0 = need(b, "zWeightOnN", "beta").get<int>();
  }
  p.has_expect = j.contains("expectHolomorphic");
  p.expect_holomorphic = j.value("expectHolomorphic", false);
  return p;
}

}  // namespace invconn
