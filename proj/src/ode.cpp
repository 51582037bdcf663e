#include "flatconn/ode.hpp"

#include "flatconn/errors.hpp"

namespace flatconn {

OdeProblem::OdeProblem(SeriesMatrix coefficient) : b(std::move(coefficient)) {
    if (b.nvars() != 1) {
        throw DimensionError("ode: coefficient matrix must be univariate");
    }
    if (b.rows() != b.cols()) {
        throw DimensionError("ode: coefficient matrix must be square");
    }
    if (b.prec() < 1) {
        throw PrecisionError("ode: precision must be >= 1");
    }
}

SeriesMatrix solve_matrix_ode(const OdeProblem& p) {
    int r = p.rank();
    int prec = p.prec();
    std::vector<RationalMatrix> a;
    a.reserve(static_cast<std::size_t>(prec) + 1);
    for (int k = 0; k <= prec; ++k) {
        a.push_back(coefficient_matrix(p.b, MultiIndex{k}));
    }
    // g' = -g b coefficientwise: (k+1) g_{k+1} = -sum_{i+j=k} g_i a_j.
    std::vector<RationalMatrix> g;
    g.reserve(static_cast<std::size_t>(prec) + 1);
    g.push_back(RationalMatrix::identity(r));
    for (int k = 0; k < prec; ++k) {
        RationalMatrix sum(r, r);
        for (int i = 0; i <= k; ++i) {
            sum = sum + g[static_cast<std::size_t>(i)] *
                            a[static_cast<std::size_t>(k - i)];
        }
        g.push_back(sum * rational(-1, k + 1));
    }
    SeriesMatrix out(r, r, 1, prec);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            std::map<MultiIndex, Rational> terms;
            for (int k = 0; k <= prec; ++k) {
                const Rational& c = g[static_cast<std::size_t>(k)].at(i, j);
                if (c != 0) terms.emplace(MultiIndex{k}, c);
            }
            out.set(i, j,
                    TruncatedSeries::from_terms(1, prec, std::move(terms)));
        }
    }
    return out;
}

SeriesMatrix exp_method(const OdeProblem& p) {
    int prec = p.prec();
    SeriesMatrix c(p.rank(), p.rank(), 1, prec);
    for (int i = 0; i < p.rank(); ++i) {
        for (int j = 0; j < p.rank(); ++j) {
            c.set(i, j, integrate(p.b.at(i, j), 0, prec));
        }
    }
    return exp(-c);
}

SeriesMatrix residual(const SeriesMatrix& g, const OdeProblem& p) {
    if (g.rows() != p.rank() || g.cols() != p.rank() || g.nvars() != 1) {
        throw DimensionError("ode: candidate solution shape mismatch");
    }
    return partial_derivative(g, 0) + g * p.b;
}

bool commuting_family_check(const OdeProblem& p) {
    int prec = p.prec();
    std::vector<RationalMatrix> a;
    a.reserve(static_cast<std::size_t>(prec) + 1);
    for (int k = 0; k <= prec; ++k) {
        a.push_back(coefficient_matrix(p.b, MultiIndex{k}));
    }
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (a[i] * a[j] != a[j] * a[i]) return false;
        }
    }
    return true;
}

namespace {

// b(q * t): scales the degree-d coefficient by q^d.
TruncatedSeries scale_variable(const TruncatedSeries& s, const Rational& q) {
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, c] : s.terms()) {
        Rational factor(1);
        for (int d = 0; d < e[0]; ++d) factor *= q;
        terms.emplace(e, c * factor);
    }
    return TruncatedSeries::from_terms(s.nvars(), s.prec(), std::move(terms));
}

}  // namespace

SeriesMatrix riemann_product(const OdeProblem& p, int nodes) {
    if (nodes < 1) throw DomainError("ode: node count must be >= 1");
    int r = p.rank();
    int prec = p.prec();
    SeriesMatrix ident = SeriesMatrix::identity(r, 1, prec);
    SeriesMatrix product = ident;
    // Left-to-right product over nodes k/K, k = 1..K: the step leaving 0
    // sits leftmost, matching the recurrence solution of g' = -g b.
    for (int k = 1; k <= nodes; ++k) {
        SeriesMatrix bk(r, r, 1, prec);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                bk.set(i, j, scale_variable(p.b.at(i, j), rational(k, nodes)));
            }
        }
        SeriesMatrix factor =
            ident - mul_by_var_power(bk, 0, 1, prec) * rational(1, nodes);
        product = product * factor;
    }
    return product;
}

OdeProblem bjork_counterexample(int prec) {
    // b(t) = a1 + 2t a2 with a1 = [[0,1],[0,0]], a2 = [[1,0],[0,0]];
    // [a1, a2] = -a1 != 0.
    SeriesMatrix b(2, 2, 1, prec);
    b.set(0, 0, TruncatedSeries::variable(1, prec, 0) * Rational(2));
    b.set(0, 1, TruncatedSeries::constant(1, prec, Rational(1)));
    return OdeProblem(std::move(b));
}

}  // namespace flatconn
