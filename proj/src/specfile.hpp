#pragma once

#include "catalog.hpp"

#include <json.hpp>

#include <string>

namespace invconn {

using ordered_json = nlohmann::ordered_json;

// Scalar literals: integers are exact, "p/q" strings are exact rationals,
// [re, im] pairs are complex with each part encoded the same way.  Plain
// non-integer numbers are floating point and are rejected in exact mode so a
// run cannot silently lose exactness.  `where` names the JSON path in errors.
Scalar scalar_from_json(const ordered_json& v, bool exact_mode,
                        const std::string& where);
ordered_json scalar_to_json(const Scalar& s);

Vec vec_from_json(const ordered_json& v, bool exact_mode,
                  const std::string& where);
ordered_json vec_to_json(const Vec& v);

Mat mat_from_json(const ordered_json& v, bool exact_mode,
                  const std::string& where);
ordered_json mat_to_json(const Mat& m);

CatalogEntry entry_from_json(const ordered_json& j, bool exact_mode);
ordered_json entry_to_json(const CatalogEntry& e);

// Reads and parses a file; parse errors are reported as line:column.
ordered_json load_json_file(const std::string& path);
CatalogEntry load_entry_file(const std::string& path, bool exact_mode);

// A user-supplied pair, optionally overriding the entry's homomorphism data.
struct PairFileData {
  std::string id;
  Mat omega;
  bool has_beta = false;
  Mat dbeta;
  Vec zeta;
  int w0 = 0;
  bool has_expect = false;
  bool expect_holomorphic = false;
};
PairFileData load_pair_file(const std::string& path, bool exact_mode);

}  // namespace invconn
