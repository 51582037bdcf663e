#include "flatconn/connection.hpp"

#include <algorithm>

namespace flatconn {

namespace {

void check_var(const Connection& c, int var) {
    if (var < 0 || var >= c.nvars()) {
        throw DimensionError("connection: variable index " +
                             std::to_string(var) + " out of range");
    }
}

void check_element(const Connection& c, const SeriesMatrix& v) {
    if (v.rows() != 1 || v.cols() != c.rank() || v.nvars() != c.nvars()) {
        throw DimensionError(
            "connection: element must be a 1 x rank row vector in the same "
            "variables");
    }
}

// The lowest-order nonzero coefficient of a curvature matrix: least total
// degree, then lexicographically least exponent, then row-major entry
// order.
CurvatureWitness lowest_term_witness(const SeriesMatrix& curv, int var_i,
                                     int var_j) {
    CurvatureWitness w;
    w.var_i = var_i;
    w.var_j = var_j;
    bool found = false;
    for (int r = 0; r < curv.rows(); ++r) {
        for (int c = 0; c < curv.cols(); ++c) {
            for (const auto& [e, value] : curv.at(r, c).terms()) {
                int d = total_degree(e);
                bool better =
                    !found || d < total_degree(w.exponent) ||
                    (d == total_degree(w.exponent) && e < w.exponent);
                if (better) {
                    w.exponent = e;
                    w.row = r;
                    w.col = c;
                    w.value = value;
                    found = true;
                }
            }
        }
    }
    return w;
}

}  // namespace

Connection::Connection(std::vector<SeriesMatrix> matrices)
    : matrices_(std::move(matrices)) {
    if (matrices_.empty()) {
        throw DimensionError("connection: needs one matrix per variable");
    }
    nvars_ = static_cast<int>(matrices_.size());
    rank_ = matrices_.front().rows();
    for (const auto& m : matrices_) {
        if (m.rows() != rank_ || m.cols() != rank_) {
            throw DimensionError(
                "connection: coefficient matrices must be square of equal "
                "rank");
        }
        if (m.nvars() != nvars_) {
            throw DimensionError(
                "connection: needs exactly one coefficient matrix per "
                "series variable");
        }
    }
    if (prec() < 1) {
        throw PrecisionError("connection: precision must be >= 1");
    }
}

Connection Connection::zero(int nvars, int rank, int prec) {
    std::vector<SeriesMatrix> ms(
        static_cast<std::size_t>(nvars), SeriesMatrix(rank, rank, nvars, prec));
    return Connection(std::move(ms));
}

int Connection::prec() const {
    int p = matrices_.front().prec();
    for (const auto& m : matrices_) p = std::min(p, m.prec());
    return p;
}

const SeriesMatrix& Connection::matrix(int var) const {
    check_var(*this, var);
    return matrices_[static_cast<std::size_t>(var)];
}

SeriesMatrix d_apply(const Connection& c, int var, const SeriesMatrix& v) {
    check_var(c, var);
    check_element(c, v);
    return partial_derivative(v, var) + v * c.matrix(var);
}

FlatnessReport is_flat(const Connection& c) {
    if (c.nvars() >= 2 && c.prec() < 2) {
        throw PrecisionError(
            "connection: flatness check needs precision >= 2");
    }
    FlatnessReport report;
    report.checked_depth = c.prec() - 1;
    for (int i = 0; i < c.nvars(); ++i) {
        for (int j = i + 1; j < c.nvars(); ++j) {
            const SeriesMatrix& ai = c.matrix(i);
            const SeriesMatrix& aj = c.matrix(j);
            // D_i D_j = D_j D_i on row vectors iff
            //   d_i(A_j) - d_j(A_i) - (A_i A_j - A_j A_i) = 0.
            SeriesMatrix curv = partial_derivative(aj, i) -
                                partial_derivative(ai, j) -
                                (ai * aj - aj * ai);
            if (curv.is_zero()) continue;
            report.flat = false;
            report.witness = lowest_term_witness(curv, i, j);
            return report;
        }
    }
    return report;
}

SeriesMatrix psi_apply(const Connection& c, int var, const SeriesMatrix& v) {
    check_var(c, var);
    check_element(c, v);
    int p = v.prec();
    // Fused evaluation of sum_i (-1)^i/i! t^i D^i(v): the i-th summand
    // loses i orders to D^i and regains them from t^i, so every summand
    // is known to the precision of v.
    SeriesMatrix acc = v;
    SeriesMatrix w = v;
    Rational coef(1);
    for (int i = 1; i <= p && w.prec() >= 1; ++i) {
        w = d_apply(c, var, w);
        coef *= rational(-1, i);
        acc = acc + mul_by_var_power(w, var, i, p) * coef;
    }
    return acc;
}

namespace {

SeriesMatrix psi_full_unchecked(const Connection& c, const SeriesMatrix& v,
                                const std::vector<int>& order) {
    SeriesMatrix out = v;
    for (int var : order) out = psi_apply(c, var, out);
    return out;
}

std::vector<int> default_order(int nvars) {
    std::vector<int> order(static_cast<std::size_t>(nvars));
    for (int k = 0; k < nvars; ++k) order[static_cast<std::size_t>(k)] =
        nvars - 1 - k;
    return order;
}

void check_order(const Connection& c, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != c.nvars()) {
        throw DimensionError("connection: pass order must list every "
                             "variable once");
    }
    std::vector<bool> seen(static_cast<std::size_t>(c.nvars()), false);
    for (int var : order) {
        if (var < 0 || var >= c.nvars() ||
            seen[static_cast<std::size_t>(var)]) {
            throw DimensionError("connection: pass order must be a "
                                 "permutation of the variables");
        }
        seen[static_cast<std::size_t>(var)] = true;
    }
}

void require_flat(const Connection& c) {
    FlatnessReport report = is_flat(c);
    if (!report.flat) throw FlatnessError(std::move(report));
}

}  // namespace

SeriesMatrix psi_full(const Connection& c, const SeriesMatrix& v) {
    check_element(c, v);
    require_flat(c);
    return psi_full_unchecked(c, v, default_order(c.nvars()));
}

SeriesMatrix psi_full(const Connection& c, const SeriesMatrix& v,
                      const std::vector<int>& order) {
    check_element(c, v);
    check_order(c, order);
    require_flat(c);
    return psi_full_unchecked(c, v, order);
}

SeriesMatrix horizontal_basis(const Connection& c) {
    require_flat(c);
    int r = c.rank();
    int p = c.prec();
    std::vector<int> order = default_order(c.nvars());
    SeriesMatrix g(r, r, c.nvars(), p);
    for (int i = 0; i < r; ++i) {
        SeriesMatrix e(1, r, c.nvars(), p);
        e.set(0, i, TruncatedSeries::constant(c.nvars(), p, Rational(1)));
        SeriesMatrix row = psi_full_unchecked(c, e, order);
        for (int j = 0; j < r; ++j) g.set(i, j, row.at(0, j));
    }
    return g;
}

std::pair<SeriesMatrix, SeriesMatrix> decompose(const Connection& c,
                                                const SeriesMatrix& v) {
    SeriesMatrix h = psi_full(c, v);
    return {h, v - h};
}

SeriesMatrix solve_unique(const Connection& c,
                          const std::vector<Rational>& constant_term) {
    if (static_cast<int>(constant_term.size()) != c.rank()) {
        throw DimensionError(
            "connection: initial vector length must equal the rank");
    }
    int p = c.prec();
    SeriesMatrix v(1, c.rank(), c.nvars(), p);
    for (int i = 0; i < c.rank(); ++i) {
        v.set(0, i,
              TruncatedSeries::constant(c.nvars(), p, constant_term[i]));
    }
    return psi_full(c, v);
}

std::pair<SeriesMatrix, SeriesMatrix> trivialize(const Connection& c) {
    SeriesMatrix g = horizontal_basis(c);
    SeriesMatrix g_inverse = invert(g);
    return {g, g_inverse};
}

Connection conjugate(const Connection& c, const SeriesMatrix& g,
                     const SeriesMatrix& g_inverse) {
    if (g.rows() != c.rank() || g.cols() != c.rank() ||
        g.nvars() != c.nvars()) {
        throw DimensionError("connection: gauge matrix shape mismatch");
    }
    std::vector<SeriesMatrix> out;
    out.reserve(static_cast<std::size_t>(c.nvars()));
    for (int j = 0; j < c.nvars(); ++j) {
        out.push_back((partial_derivative(g, j) + g * c.matrix(j)) *
                      g_inverse);
    }
    return Connection(std::move(out));
}

}  // namespace flatconn
