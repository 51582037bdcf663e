// Command-line front end: flatness checks, trivialization, projector and
// decomposition runs, univariate solvers, and tower utilities over exact
// rational series arithmetic.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatconn/connection.hpp"
#include "flatconn/errors.hpp"
#include "flatconn/io.hpp"
#include "flatconn/ode.hpp"

#include <random>

namespace {

using namespace flatconn;

struct Options {
    int cap = 8;
    std::string output = "human";
    unsigned long long seed = 20260814ull;

    bool record() const { return output == "record"; }
};

void emit(const Json& j) { std::cout << dump_json(j); }

std::string render_matrix(const SeriesMatrix& m, const std::string& indent) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        out += indent + "[ ";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += to_string(m.at(i, j));
        }
        out += " ]\n";
    }
    return out;
}

Json witness_to_json(const CurvatureWitness& w) {
    Json exponent = Json::array();
    for (int e : w.exponent) exponent.push_back(e);
    return Json{{"vars", Json::array({w.var_i, w.var_j})},
                {"entry", Json::array({w.row, w.col})},
                {"exponent", exponent},
                {"value", to_string(w.value)}};
}

std::string describe_witness(const CurvatureWitness& w) {
    std::string exponent;
    for (std::size_t a = 0; a < w.exponent.size(); ++a) {
        if (a) exponent += ",";
        exponent += std::to_string(w.exponent[a]);
    }
    return "curvature of the pair (t" + std::to_string(w.var_i + 1) + ", t" +
           std::to_string(w.var_j + 1) + ") has lowest term at entry (" +
           std::to_string(w.row + 1) + "," + std::to_string(w.col + 1) +
           "), exponent [" + exponent + "], coefficient " +
           to_string(w.value);
}

Connection load_connection(const std::string& path, const Options& opt) {
    Connection c = connection_from_json(load_json_file(path));
    int wp = std::min(opt.cap, c.prec());
    if (wp < c.prec()) {
        std::vector<SeriesMatrix> mats;
        for (int j = 0; j < c.nvars(); ++j) {
            mats.push_back(project(c.matrix(j), wp));
        }
        return Connection(std::move(mats));
    }
    return c;
}

OdeProblem load_ode(const std::string& path, const Options& opt) {
    OdeProblem p = ode_from_json(load_json_file(path));
    int wp = std::min(opt.cap, p.prec());
    if (wp < p.prec()) return OdeProblem(project(p.b, wp));
    return p;
}

int cmd_check_flat(const std::string& path, const Options& opt) {
    Connection c = load_connection(path, opt);
    FlatnessReport report = is_flat(c);
    if (opt.record()) {
        Json j{{"command", "check-flat"},
               {"prec", c.prec()},
               {"flat", report.flat},
               {"checked_depth", report.checked_depth},
               {"witness", report.witness ? witness_to_json(*report.witness)
                                          : Json(nullptr)}};
        emit(j);
    } else if (report.flat) {
        std::cout << "FLAT (curvature verified through total degree "
                  << report.checked_depth << ")\n";
    } else {
        std::cout << "NOT-FLAT: " << describe_witness(*report.witness)
                  << "\n";
    }
    return report.flat ? 0 : 1;
}

int report_not_flat(const FlatnessError& e, const Options& opt,
                    const char* command) {
    if (opt.record()) {
        emit(Json{{"command", command},
                  {"flat", false},
                  {"witness", e.report.witness
                                  ? witness_to_json(*e.report.witness)
                                  : Json(nullptr)}});
    } else {
        std::cout << "NOT-FLAT: "
                  << (e.report.witness ? describe_witness(*e.report.witness)
                                       : std::string("curvature is nonzero"))
                  << "\n";
    }
    return 1;
}

int cmd_trivialize(const std::string& path, const Options& opt) {
    Connection c = load_connection(path, opt);
    SeriesMatrix g(1, 1, 1, 0), ginv(1, 1, 1, 0);
    try {
        auto pair = trivialize(c);
        g = pair.first;
        ginv = pair.second;
    } catch (const FlatnessError& e) {
        return report_not_flat(e, opt, "trivialize");
    }
    int wp = c.prec();

    // paranoia passes: the frame must satisfy its defining equations
    bool residual_zero = true;
    for (int j = 0; j < c.nvars(); ++j) {
        SeriesMatrix defect =
            partial_derivative(g, j) + project(g * c.matrix(j), wp - 1);
        if (!defect.is_zero()) residual_zero = false;
    }
    bool inverse_ok =
        g * ginv == SeriesMatrix::identity(c.rank(), c.nvars(), wp);
    bool conjugated_zero = true;
    if (wp >= 2) {
        Connection flat = conjugate(c, g, ginv);
        for (int j = 0; j < c.nvars(); ++j) {
            if (!flat.matrix(j).is_zero()) conjugated_zero = false;
        }
    }

    if (opt.record()) {
        emit(Json{{"command", "trivialize"},
                  {"prec", wp},
                  {"flat", true},
                  {"g", matrix_to_json(g)},
                  {"g_inverse", matrix_to_json(ginv)},
                  {"residual_zero", residual_zero},
                  {"inverse_ok", inverse_ok},
                  {"conjugated_zero", conjugated_zero}});
    } else {
        std::cout << "horizontal frame g (rows are the projected unit "
                     "vectors):\n"
                  << render_matrix(g, "  ");
        std::cout << "g^-1:\n" << render_matrix(ginv, "  ");
        std::cout << "d_j(g) + g A_j = 0 through degree " << wp - 1 << ": "
                  << (residual_zero ? "yes" : "NO") << "\n";
        std::cout << "g g^-1 = I: " << (inverse_ok ? "yes" : "NO") << "\n";
        if (wp >= 2) {
            std::cout << "conjugated coefficient matrices vanish: "
                      << (conjugated_zero ? "yes" : "NO") << "\n";
        }
    }
    return residual_zero && inverse_ok && conjugated_zero ? 0 : 1;
}

SeriesMatrix load_element(const std::string& path, const Connection& c,
                          const Options& opt) {
    SeriesMatrix v = element_from_json(load_json_file(path));
    if (v.cols() != c.rank() || v.nvars() != c.nvars()) {
        throw ParseError("element does not fit the connection (rank or "
                         "variable count differs)");
    }
    int wp = std::min({opt.cap, c.prec(), v.prec()});
    return project(v, wp);
}

int cmd_psi(const std::string& conn_path, const std::string& elem_path,
            const Options& opt) {
    Connection c = load_connection(conn_path, opt);
    SeriesMatrix v = load_element(elem_path, c, opt);
    SeriesMatrix h(1, 1, 1, 0);
    try {
        h = psi_full(c, v);
    } catch (const FlatnessError& e) {
        return report_not_flat(e, opt, "psi");
    }
    bool horizontal = true;
    for (int j = 0; j < c.nvars(); ++j) {
        if (!d_apply(c, j, h).is_zero()) horizontal = false;
    }
    if (opt.record()) {
        emit(Json{{"command", "psi"},
                  {"prec", h.prec()},
                  {"flat", true},
                  {"element", element_to_json(h)},
                  {"horizontal", horizontal}});
    } else {
        std::cout << "psi(v):\n" << render_matrix(h, "  ");
        std::cout << "horizontal through degree " << h.prec() - 1 << ": "
                  << (horizontal ? "yes" : "NO") << "\n";
    }
    return horizontal ? 0 : 1;
}

int cmd_decompose(const std::string& conn_path, const std::string& elem_path,
                  const Options& opt) {
    Connection c = load_connection(conn_path, opt);
    SeriesMatrix v = load_element(elem_path, c, opt);
    SeriesMatrix h(1, 1, 1, 0), m(1, 1, 1, 0);
    try {
        auto pair = decompose(c, v);
        h = pair.first;
        m = pair.second;
    } catch (const FlatnessError& e) {
        return report_not_flat(e, opt, "decompose");
    }
    bool sum_ok = (h + m == v);
    bool ideal_ok = true;
    for (int j = 0; j < m.cols(); ++j) {
        if (auto o = m.at(0, j).order(); o && *o < 1) ideal_ok = false;
    }
    if (opt.record()) {
        emit(Json{{"command", "decompose"},
                  {"prec", v.prec()},
                  {"flat", true},
                  {"horizontal", element_to_json(h)},
                  {"ideal", element_to_json(m)},
                  {"sum_matches", sum_ok},
                  {"ideal_part_in_ideal", ideal_ok}});
    } else {
        std::cout << "horizontal part:\n" << render_matrix(h, "  ");
        std::cout << "ideal part:\n" << render_matrix(m, "  ");
        std::cout << "sum reproduces the input: " << (sum_ok ? "yes" : "NO")
                  << "\n";
    }
    return sum_ok && ideal_ok ? 0 : 1;
}

int cmd_ode_solve(const std::string& path, const std::string& method,
                  const Options& opt) {
    OdeProblem p = load_ode(path, opt);
    SeriesMatrix g(1, 1, 1, 0);
    std::string method_name = method;
    if (method == "recursion") {
        g = solve_matrix_ode(p);
    } else if (method == "exp") {
        g = exp_method(p);
    } else if (method.rfind("riemann:", 0) == 0) {
        int nodes = 0;
        try {
            nodes = std::stoi(method.substr(8));
        } catch (const std::exception&) {
            throw ParseError("ode-solve: bad node count in '" + method +
                             "'");
        }
        g = riemann_product(p, nodes);
    } else {
        throw ParseError(
            "ode-solve: method must be recursion, exp, or riemann:K");
    }
    SeriesMatrix defect = residual(g, p);
    if (opt.record()) {
        Json j{{"command", "ode-solve"},
               {"method", method_name},
               {"prec", p.prec()},
               {"g", matrix_to_json(g)},
               {"residual_zero", defect.is_zero()},
               {"residual", matrix_to_json(defect)}};
        emit(j);
    } else {
        std::cout << "g:\n" << render_matrix(g, "  ");
        if (defect.is_zero()) {
            std::cout << "residual dg/dt + g b vanishes through degree "
                      << defect.prec() << "\n";
        } else {
            std::cout << "residual dg/dt + g b is NOT zero:\n"
                      << render_matrix(defect, "  ");
        }
    }
    return 0;
}

int cmd_bjork_demo(const Options& opt) {
    int prec = opt.cap;
    OdeProblem p = bjork_counterexample(prec);
    SeriesMatrix g_exp = exp_method(p);
    SeriesMatrix g_rec = solve_matrix_ode(p);
    SeriesMatrix r_exp = residual(g_exp, p);
    SeriesMatrix r_rec = residual(g_rec, p);
    bool commuting = commuting_family_check(p);

    // locate the lowest-order term of the exp-method defect
    std::optional<int> lowest;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (auto o = r_exp.at(i, j).order()) {
                if (!lowest || *o < *lowest) lowest = o;
            }
        }
    }

    if (opt.record()) {
        emit(Json{{"command", "bjork-demo"},
                  {"prec", prec},
                  {"b", matrix_to_json(p.b)},
                  {"coefficients_commute", commuting},
                  {"exp_candidate", matrix_to_json(g_exp)},
                  {"exp_residual", matrix_to_json(r_exp)},
                  {"exp_residual_order",
                   lowest ? Json(*lowest) : Json(nullptr)},
                  {"recursion_solution", matrix_to_json(g_rec)},
                  {"recursion_residual_zero", r_rec.is_zero()}});
    } else {
        std::cout << "b(t) = a1 + 2t a2, a1 = [[0,1],[0,0]], a2 = "
                     "[[1,0],[0,0]]  (precision " << prec << ")\n";
        std::cout << "coefficient matrices commute: "
                  << (commuting ? "yes" : "no") << "\n\n";
        std::cout << "exp(-int b) candidate:\n" << render_matrix(g_exp, "  ");
        std::cout << "its residual dg/dt + g b:\n"
                  << render_matrix(r_exp, "  ");
        if (lowest) {
            std::cout << "=> the closed-form candidate fails at order "
                      << *lowest << "\n\n";
        }
        std::cout << "recurrence solution:\n" << render_matrix(g_rec, "  ");
        std::cout << "its residual is "
                  << (r_rec.is_zero() ? "zero" : "NOT zero") << "\n";
    }
    return 0;
}

int cmd_tower_check(const std::string& path, std::optional<int> order,
                    const Options& opt) {
    Tower t = tower_from_json(load_json_file(path));
    CoherenceReport report = is_coherent(t);
    bool order_ok = true;
    std::optional<bool> order_result;
    if (report.coherent && order) {
        order_ok = kernel_order_check(t, *order);
        order_result = order_ok;
    }
    if (opt.record()) {
        Json j{{"command", "tower-check"},
               {"coherent", report.coherent},
               {"failing_pair", report.failing_pair
                                    ? Json(*report.failing_pair)
                                    : Json(nullptr)}};
        if (order) {
            j["order"] = *order;
            j["order_ok"] =
                order_result ? Json(*order_result) : Json(nullptr);
        }
        emit(j);
    } else if (report.coherent) {
        std::cout << "COHERENT (" << t.levels.size() << " levels, top "
                  << t.levels.back() << ")\n";
        if (order) {
            std::cout << "all components have order >= " << *order << ": "
                      << (order_ok ? "yes" : "no") << "\n";
        }
    } else {
        std::cout << "NOT-COHERENT: stages " << *report.failing_pair
                  << " and " << *report.failing_pair + 1
                  << " disagree below level "
                  << t.levels[static_cast<std::size_t>(
                         *report.failing_pair)]
                  << "\n";
    }
    return report.coherent && order_ok ? 0 : 1;
}

int cmd_self_test(int count, const Options& opt) {
    std::mt19937_64 rng(opt.seed);
    int failures = 0;
    for (int rep = 0; rep < count; ++rep) {
        int nvars = 1 + static_cast<int>(rng() % 2);
        int rank = 1 + static_cast<int>(rng() % 3);
        int prec = 2 + static_cast<int>(rng() % 5);

        // random flat connection from a random unipotent gauge
        SeriesMatrix u = SeriesMatrix::identity(rank, nvars, prec + 1);
        std::uniform_int_distribution<int> num(-10, 10), den(1, 10),
            deg(1, prec + 1), axis(0, nvars - 1);
        for (int i = 0; i < rank; ++i) {
            for (int j = 0; j < rank; ++j) {
                std::map<MultiIndex, Rational> terms;
                for (int k = 0; k < 3; ++k) {
                    MultiIndex e(static_cast<std::size_t>(nvars), 0);
                    int d = deg(rng);
                    for (int step = 0; step < d; ++step) {
                        e[static_cast<std::size_t>(axis(rng))] += 1;
                    }
                    Rational c = rational(num(rng), den(rng));
                    if (c != 0) terms.insert_or_assign(e, c);
                }
                u.set(i, j, u.at(i, j) + TruncatedSeries::from_terms(
                                             nvars, prec + 1,
                                             std::move(terms)));
            }
        }
        SeriesMatrix uinv = invert(u);
        std::vector<SeriesMatrix> mats;
        for (int j = 0; j < nvars; ++j) {
            mats.push_back(partial_derivative(u, j) * uinv);
        }
        Connection c(std::move(mats));

        bool ok = is_flat(c).flat;
        if (ok) {
            SeriesMatrix g = horizontal_basis(c);
            ok = (g == project(uinv, prec));
            for (int j = 0; ok && j < nvars; ++j) {
                for (int r = 0; ok && r < rank; ++r) {
                    SeriesMatrix row(1, rank, nvars, prec);
                    for (int col = 0; col < rank; ++col) {
                        row.set(0, col, g.at(r, col));
                    }
                    ok = d_apply(c, j, row).is_zero();
                }
            }
        }
        if (!ok) ++failures;
    }
    if (opt.record()) {
        emit(Json{{"command", "self-test"},
                  {"count", count},
                  {"seed", opt.seed},
                  {"failures", failures}});
    } else {
        std::cout << "self-test: " << (count - failures) << "/" << count
                  << " random trivializations verified (seed " << opt.seed
                  << ")\n";
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact flat-connection trivializer over truncated power series"};
    app.require_subcommand(1);

    Options opt;
    CLI::Option* prec_opt =
        app.add_option("--prec", opt.cap,
                       "working precision cap (default 8, or FLATCONN_PREC)")
            ->check(CLI::PositiveNumber);
    app.add_option("--output", opt.output, "output style")
        ->check(CLI::IsMember({"human", "record"}));
    app.add_option("--seed", opt.seed, "seed for the randomized self-test");

    std::string conn_path, elem_path, ode_path, tower_path;
    std::string method = "recursion";
    int self_count = 25;
    std::optional<int> tower_order;

    auto* c_flat = app.add_subcommand("check-flat",
                                      "verify the curvature vanishes");
    c_flat->add_option("connection", conn_path, "connection literal (JSON)")
        ->required();

    auto* c_triv = app.add_subcommand(
        "trivialize", "compute the horizontal frame and its inverse");
    c_triv->add_option("connection", conn_path, "connection literal (JSON)")
        ->required();

    auto* c_psi = app.add_subcommand(
        "psi", "project an element onto the horizontal submodule");
    c_psi->add_option("connection", conn_path, "connection literal (JSON)")
        ->required();
    c_psi->add_option("element", elem_path, "element literal (JSON)")
        ->required();

    auto* c_dec = app.add_subcommand(
        "decompose", "split an element into horizontal and ideal parts");
    c_dec->add_option("connection", conn_path, "connection literal (JSON)")
        ->required();
    c_dec->add_option("element", elem_path, "element literal (JSON)")
        ->required();

    auto* c_ode = app.add_subcommand("ode-solve",
                                     "solve dg/dt = -g b with g(0) = I");
    c_ode->add_option("ode", ode_path, "univariate connection literal")
        ->required();
    c_ode->add_option("--method", method,
                      "recursion (exact), exp (naive closed form), or "
                      "riemann:K (K-node product)");

    auto* c_bjork = app.add_subcommand(
        "bjork-demo",
        "show the naive exponential failing on a noncommuting system");

    auto* c_tower = app.add_subcommand("tower-check",
                                       "verify a truncation tower");
    c_tower->add_option("tower", tower_path, "tower literal (JSON)")
        ->required();
    c_tower->add_option("--order", tower_order,
                        "also test membership in the given ideal power");

    auto* c_self = app.add_subcommand(
        "self-test", "randomized round trip on generated flat connections");
    c_self->add_option("--count", self_count, "number of instances")
        ->check(CLI::PositiveNumber);

    // allow the global flags to appear after the subcommand name too
    for (CLI::App* sub : {c_flat, c_triv, c_psi, c_dec, c_ode, c_bjork,
                          c_tower, c_self}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (prec_opt->count() == 0) {
        if (const char* env = std::getenv("FLATCONN_PREC")) {
            std::string text(env);
            bool digits = !text.empty() &&
                          std::all_of(text.begin(), text.end(), [](char ch) {
                              return ch >= '0' && ch <= '9';
                          });
            int value = 0;
            if (digits) {
                try {
                    value = std::stoi(text);
                } catch (const std::exception&) {
                    digits = false;
                }
            }
            if (!digits || value < 1) {
                std::cerr << "error: FLATCONN_PREC must be a positive "
                             "integer, got '" << text << "'\n";
                return 2;
            }
            opt.cap = value;
        }
    }

    try {
        if (c_flat->parsed()) return cmd_check_flat(conn_path, opt);
        if (c_triv->parsed()) return cmd_trivialize(conn_path, opt);
        if (c_psi->parsed()) return cmd_psi(conn_path, elem_path, opt);
        if (c_dec->parsed()) return cmd_decompose(conn_path, elem_path, opt);
        if (c_ode->parsed()) return cmd_ode_solve(ode_path, method, opt);
        if (c_bjork->parsed()) return cmd_bjork_demo(opt);
        if (c_tower->parsed())
            return cmd_tower_check(tower_path, tower_order, opt);
        if (c_self->parsed()) return cmd_self_test(self_count, opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
