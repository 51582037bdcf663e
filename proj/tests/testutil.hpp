#pragma once

// Deterministic random generators shared by the test binaries.  Seeds are
// fixed by each caller so failures reproduce exactly.

#include <initializer_list>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "flatconn/connection.hpp"
#include "flatconn/matrix.hpp"
#include "flatconn/ode.hpp"
#include "flatconn/series.hpp"

namespace testutil {

using namespace flatconn;

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 10, int max_den = 10) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return rational(num(rng), den(rng));
}

inline MultiIndex random_exponent(Rng& rng, int nvars, int max_total) {
    std::uniform_int_distribution<int> total_dist(0, max_total);
    std::uniform_int_distribution<int> axis(0, nvars - 1);
    MultiIndex e(static_cast<std::size_t>(nvars), 0);
    int total = total_dist(rng);
    for (int k = 0; k < total; ++k) e[static_cast<std::size_t>(axis(rng))] += 1;
    return e;
}

// Sparse random series; terms below min_degree are skipped, so the result
// may carry fewer than nterms terms (possibly zero).
inline TruncatedSeries random_series(Rng& rng, int nvars, int prec,
                                     int nterms, int min_degree = 0) {
    std::map<MultiIndex, Rational> terms;
    for (int k = 0; k < nterms; ++k) {
        MultiIndex e = random_exponent(rng, nvars, prec);
        if (total_degree(e) < min_degree) continue;
        Rational c = random_rational(rng);
        if (c == 0) continue;
        terms[e] = c;
    }
    return TruncatedSeries::from_terms(nvars, prec, std::move(terms));
}

// Golden-value helper: builds a series from (exponent, coefficient) pairs.
inline TruncatedSeries series_of(
    int nvars, int prec,
    std::initializer_list<std::pair<std::vector<int>, const char*>> items) {
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, c] : items) {
        terms.emplace(e, rational_from_string(c));
    }
    return TruncatedSeries::from_terms(nvars, prec, std::move(terms));
}

inline SeriesMatrix random_matrix(Rng& rng, int rows, int cols, int nvars,
                                  int prec, int nterms = 3,
                                  int min_degree = 0) {
    SeriesMatrix m(rows, cols, nvars, prec);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m.set(i, j, random_series(rng, nvars, prec, nterms, min_degree));
        }
    }
    return m;
}

inline SeriesMatrix random_element(Rng& rng, int rank, int nvars, int prec,
                                   int nterms = 3) {
    return random_matrix(rng, 1, rank, nvars, prec, nterms);
}

// I + (entries of order >= 1): invertible with constant part the identity.
inline SeriesMatrix random_unit_matrix(Rng& rng, int rank, int nvars,
                                       int prec, int nterms = 3) {
    SeriesMatrix m = SeriesMatrix::identity(rank, nvars, prec);
    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) {
            m.set(i, j,
                  m.at(i, j) + random_series(rng, nvars, prec, nterms, 1));
        }
    }
    return m;
}

struct GaugeConnection {
    Connection connection;  // A_j = d_j(u) * u^{-1}, flat by construction
    SeriesMatrix gauge;     // u, one order deeper than the connection
};

// Random flat connection at precision `prec` with a known trivializing
// matrix: its horizontal basis must equal project(invert(gauge), prec).
inline GaugeConnection random_flat_connection(Rng& rng, int nvars, int rank,
                                              int prec, int nterms = 3) {
    SeriesMatrix u = random_unit_matrix(rng, rank, nvars, prec + 1, nterms);
    SeriesMatrix uinv = invert(u);
    std::vector<SeriesMatrix> mats;
    mats.reserve(static_cast<std::size_t>(nvars));
    for (int j = 0; j < nvars; ++j) {
        mats.push_back(partial_derivative(u, j) * uinv);
    }
    return GaugeConnection{Connection(std::move(mats)), std::move(u)};
}

// Univariate coefficient matrix whose series coefficients all commute:
// a polynomial in one constant matrix.
inline OdeProblem random_commuting_ode(Rng& rng, int rank, int prec,
                                       int nterms = 3) {
    RationalMatrix c(rank, rank);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) {
            c.set(i, j, Rational(entry(rng)));
        }
    }
    RationalMatrix power = RationalMatrix::identity(rank);
    SeriesMatrix b(rank, rank, 1, prec);
    for (int k = 0; k < 3; ++k) {
        TruncatedSeries scalar = random_series(rng, 1, prec, nterms);
        SeriesMatrix term = from_rational(power, 1, prec);
        for (int i = 0; i < rank; ++i) {
            for (int j = 0; j < rank; ++j) {
                term.set(i, j, term.at(i, j) * scalar);
            }
        }
        b = b + term;
        power = power * c;
    }
    return OdeProblem(std::move(b));
}

}  // namespace testutil
