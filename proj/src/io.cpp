#include "flatconn/io.hpp"

#include <fstream>
#include <sstream>

namespace flatconn {

namespace {

void require_object(const Json& j, const char* what) {
    if (!j.is_object()) {
        throw ParseError(std::string(what) + ": expected a JSON object");
    }
}

void require_keys(const Json& j, const char* what,
                  std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
        if (!j.contains(key)) {
            throw ParseError(std::string(what) + ": missing key '" + key +
                             "'");
        }
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : keys) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError(std::string(what) + ": unknown key '" + key +
                             "'");
        }
    }
}

int require_int(const Json& j, const char* what, const char* key) {
    const Json& v = j.at(key);
    if (!v.is_number_integer()) {
        throw ParseError(std::string(what) + ": '" + key +
                         "' must be an integer");
    }
    return v.get<int>();
}

const Json& require_array(const Json& j, const char* what, const char* key) {
    const Json& v = j.at(key);
    if (!v.is_array()) {
        throw ParseError(std::string(what) + ": '" + key +
                         "' must be an array");
    }
    return v;
}

MultiIndex parse_exponent(const Json& v, const char* what, int nvars) {
    if (!v.is_array() || static_cast<int>(v.size()) != nvars) {
        throw ParseError(std::string(what) +
                         ": exponent must be an array of length nvars");
    }
    MultiIndex e;
    e.reserve(v.size());
    for (const Json& c : v) {
        if (!c.is_number_integer() || c.get<int>() < 0) {
            throw ParseError(std::string(what) +
                             ": exponents must be nonnegative integers");
        }
        e.push_back(c.get<int>());
    }
    return e;
}

Rational parse_coef(const Json& v, const char* what) {
    if (!v.is_string()) {
        throw ParseError(std::string(what) +
                         ": coefficients must be rational strings");
    }
    return rational_from_string(v.get<std::string>());
}

Json exponent_to_json(const MultiIndex& e) {
    Json out = Json::array();
    for (int c : e) out.push_back(c);
    return out;
}

}  // namespace

Json series_to_json(const TruncatedSeries& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) {
        terms.push_back(Json{{"exp", exponent_to_json(e)},
                             {"coef", to_string(c)}});
    }
    return Json{{"nvars", s.nvars()}, {"prec", s.prec()}, {"terms", terms}};
}

TruncatedSeries series_from_json(const Json& j) {
    require_object(j, "series");
    require_keys(j, "series", {"nvars", "prec", "terms"});
    int nvars = require_int(j, "series", "nvars");
    int prec = require_int(j, "series", "prec");
    if (nvars < 1) throw ParseError("series: nvars must be >= 1");
    if (prec < 0) throw ParseError("series: prec must be >= 0");
    std::map<MultiIndex, Rational> terms;
    for (const Json& term : require_array(j, "series", "terms")) {
        require_object(term, "series term");
        require_keys(term, "series term", {"exp", "coef"});
        MultiIndex e = parse_exponent(term.at("exp"), "series", nvars);
        if (total_degree(e) > prec) {
            throw ParseError("series: term degree exceeds prec");
        }
        Rational c = parse_coef(term.at("coef"), "series");
        if (c == 0) throw ParseError("series: zero coefficient");
        if (!terms.emplace(std::move(e), std::move(c)).second) {
            throw ParseError("series: duplicate exponent");
        }
    }
    return TruncatedSeries::from_terms(nvars, prec, std::move(terms));
}

Json operator_to_json(const DiffOperator& op) {
    Json terms = Json::array();
    for (const auto& [k, b] : op.terms()) {
        terms.push_back(Json{{"dexp", exponent_to_json(k)},
                             {"coef", series_to_json(b)}});
    }
    return Json{{"nvars", op.nvars()}, {"terms", terms}};
}

DiffOperator operator_from_json(const Json& j) {
    require_object(j, "operator");
    require_keys(j, "operator", {"nvars", "terms"});
    int nvars = require_int(j, "operator", "nvars");
    if (nvars < 1) throw ParseError("operator: nvars must be >= 1");
    std::map<MultiIndex, TruncatedSeries> terms;
    for (const Json& term : require_array(j, "operator", "terms")) {
        require_object(term, "operator term");
        require_keys(term, "operator term", {"dexp", "coef"});
        MultiIndex k = parse_exponent(term.at("dexp"), "operator", nvars);
        TruncatedSeries b = series_from_json(term.at("coef"));
        if (b.nvars() != nvars) {
            throw ParseError("operator: coefficient variable-count "
                             "mismatch");
        }
        if (!terms.emplace(std::move(k), std::move(b)).second) {
            throw ParseError("operator: duplicate derivative exponent");
        }
    }
    return DiffOperator::from_terms(nvars, std::move(terms));
}

Json matrix_to_json(const SeriesMatrix& m) {
    int prec = m.prec();
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) {
            row.push_back(series_to_json(project(m.at(i, j), prec)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json connection_to_json(const Connection& c) {
    Json matrices = Json::array();
    int prec = c.prec();
    for (int var = 0; var < c.nvars(); ++var) {
        matrices.push_back(matrix_to_json(project(c.matrix(var), prec)));
    }
    return Json{{"nvars", c.nvars()},
                {"rank", c.rank()},
                {"prec", prec},
                {"matrices", matrices}};
}

namespace {

SeriesMatrix matrix_from_json(const Json& grid, const char* what, int nvars,
                              int rank, int prec) {
    if (!grid.is_array() || static_cast<int>(grid.size()) != rank) {
        throw ParseError(std::string(what) + ": matrix must have `rank` "
                         "rows");
    }
    SeriesMatrix m(rank, rank, nvars, prec);
    for (int i = 0; i < rank; ++i) {
        const Json& row = grid.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != rank) {
            throw ParseError(std::string(what) + ": matrix rows must have "
                             "`rank` entries");
        }
        for (int j = 0; j < rank; ++j) {
            TruncatedSeries s =
                series_from_json(row.at(static_cast<std::size_t>(j)));
            if (s.nvars() != nvars || s.prec() != prec) {
                throw ParseError(std::string(what) +
                                 ": matrix entries must match the header "
                                 "nvars and prec");
            }
            m.set(i, j, std::move(s));
        }
    }
    return m;
}

}  // namespace

Connection connection_from_json(const Json& j) {
    require_object(j, "connection");
    require_keys(j, "connection", {"nvars", "rank", "prec", "matrices"});
    int nvars = require_int(j, "connection", "nvars");
    int rank = require_int(j, "connection", "rank");
    int prec = require_int(j, "connection", "prec");
    if (nvars < 1) throw ParseError("connection: nvars must be >= 1");
    if (rank < 1) throw ParseError("connection: rank must be >= 1");
    if (prec < 1) throw ParseError("connection: prec must be >= 1");
    const Json& grids = require_array(j, "connection", "matrices");
    if (static_cast<int>(grids.size()) != nvars) {
        throw ParseError("connection: needs one matrix per variable");
    }
    std::vector<SeriesMatrix> matrices;
    matrices.reserve(grids.size());
    for (const Json& grid : grids) {
        matrices.push_back(
            matrix_from_json(grid, "connection", nvars, rank, prec));
    }
    return Connection(std::move(matrices));
}

Json element_to_json(const SeriesMatrix& v) {
    if (v.rows() != 1) {
        throw DimensionError("element: expected a row vector");
    }
    int prec = v.prec();
    Json entries = Json::array();
    for (int j = 0; j < v.cols(); ++j) {
        entries.push_back(series_to_json(project(v.at(0, j), prec)));
    }
    return Json{{"nvars", v.nvars()},
                {"rank", v.cols()},
                {"prec", prec},
                {"entries", entries}};
}

SeriesMatrix element_from_json(const Json& j) {
    require_object(j, "element");
    require_keys(j, "element", {"nvars", "rank", "prec", "entries"});
    int nvars = require_int(j, "element", "nvars");
    int rank = require_int(j, "element", "rank");
    int prec = require_int(j, "element", "prec");
    if (nvars < 1) throw ParseError("element: nvars must be >= 1");
    if (rank < 1) throw ParseError("element: rank must be >= 1");
    if (prec < 0) throw ParseError("element: prec must be >= 0");
    const Json& entries = require_array(j, "element", "entries");
    if (static_cast<int>(entries.size()) != rank) {
        throw ParseError("element: needs `rank` entries");
    }
    SeriesMatrix v(1, rank, nvars, prec);
    for (int c = 0; c < rank; ++c) {
        TruncatedSeries s =
            series_from_json(entries.at(static_cast<std::size_t>(c)));
        if (s.nvars() != nvars || s.prec() != prec) {
            throw ParseError("element: entries must match the header nvars "
                             "and prec");
        }
        v.set(0, c, std::move(s));
    }
    return v;
}

Json ode_to_json(const OdeProblem& p) {
    Json matrices = Json::array();
    matrices.push_back(matrix_to_json(p.b));
    return Json{{"nvars", 1},
                {"rank", p.rank()},
                {"prec", p.prec()},
                {"matrices", matrices}};
}

OdeProblem ode_from_json(const Json& j) {
    Connection c = connection_from_json(j);
    if (c.nvars() != 1) {
        throw ParseError("ode: expected a univariate connection");
    }
    return OdeProblem(c.matrix(0));
}

Json tower_to_json(const Tower& t) {
    Json levels = Json::array();
    for (int p : t.levels) levels.push_back(p);
    Json stages = Json::array();
    for (const auto& stage : t.stages) {
        Json components = Json::array();
        for (const auto& s : stage) components.push_back(series_to_json(s));
        stages.push_back(std::move(components));
    }
    return Json{{"levels", levels}, {"stages", stages}};
}

Tower tower_from_json(const Json& j) {
    require_object(j, "tower");
    require_keys(j, "tower", {"levels", "stages"});
    std::vector<int> levels;
    for (const Json& v : require_array(j, "tower", "levels")) {
        if (!v.is_number_integer()) {
            throw ParseError("tower: levels must be integers");
        }
        levels.push_back(v.get<int>());
    }
    std::vector<std::vector<TruncatedSeries>> stages;
    for (const Json& stage : require_array(j, "tower", "stages")) {
        if (!stage.is_array()) {
            throw ParseError("tower: stages must be arrays");
        }
        std::vector<TruncatedSeries> components;
        for (const Json& s : stage) components.push_back(series_from_json(s));
        stages.push_back(std::move(components));
    }
    try {
        return Tower(std::move(levels), std::move(stages));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace flatconn
