#pragma once

#include "quadlie/free_nilpotent.hpp"
#include "quadlie/qmatrix.hpp"

#include <json.hpp>

#include <string>

namespace quadlie {

using json = nlohmann::json;
// ordered_json keeps insertion order, which is what makes CLI reports
// byte-stable run to run
using ojson = nlohmann::ordered_json;

// Matrices serialize as {"rows": r, "cols": c, "entries": [["p/q",...]]}.
// The parser also accepts a bare 2D array of rational strings, the
// shape the test fixtures use.
ojson mat_to_json(const QMatrix& m);
QMatrix mat_from_json(const json& j);

ojson vec_to_json(const VecQ& v);
VecQ vec_from_json(const json& j);

// {"d":., "t":., "basis":[...], "graded_offsets":[...],
//  "structure":[[i,j,k,"c"],...]} with 1-based structure rows
ojson algebra_to_json(const FreeNilpotent& alg);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const ojson& j);

} // namespace quadlie
