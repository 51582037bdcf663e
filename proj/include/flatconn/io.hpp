#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flatconn/completion.hpp"
#include "flatconn/connection.hpp"
#include "flatconn/ode.hpp"
#include "flatconn/weyl.hpp"

namespace flatconn {

using Json = nlohmann::json;

// Series literal:
//   {"nvars": n, "prec": p,
//    "terms": [{"exp": [e1,...,en], "coef": "p/q"}, ...]}
// Terms are sorted lexicographically by exponent, carry no zero
// coefficients, and repeat no exponent.  Parsing rejects violations.
Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);

// Operator literal:
//   {"nvars": n, "terms": [{"dexp": [k1,...,kn], "coef": <series>}, ...]}
Json operator_to_json(const DiffOperator& op);
DiffOperator operator_from_json(const Json& j);

// Connection literal:
//   {"nvars": n, "rank": r, "prec": p,
//    "matrices": [n r-by-r grids of series literals]}
Json connection_to_json(const Connection& c);
Connection connection_from_json(const Json& j);

// Module element literal:
//   {"nvars": n, "rank": r, "prec": p, "entries": [r series literals]}
Json element_to_json(const SeriesMatrix& v);
SeriesMatrix element_from_json(const Json& j);

// ODE problem: the connection literal with nvars = 1 and one matrix.
Json ode_to_json(const OdeProblem& p);
OdeProblem ode_from_json(const Json& j);

// Tower literal:
//   {"levels": [p1,...,pm], "stages": [m lists of series literals]}
Json tower_to_json(const Tower& t);
Tower tower_from_json(const Json& j);

// Square matrix as a grid of series literals (used inside records).
Json matrix_to_json(const SeriesMatrix& m);

// Reads and parses a JSON document; wraps file and syntax problems in
// ParseError.
Json load_json_file(const std::string& path);

// Canonical rendering used everywhere output must be reproducible:
// two-space indent, sorted keys, trailing newline.
std::string dump_json(const Json& j);

}  // namespace flatconn
