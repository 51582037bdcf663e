#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "flatconn/errors.hpp"
#include "flatconn/matrix.hpp"

namespace flatconn {

// Location of the lowest-order nonzero curvature coefficient of a
// non-flat connection: the variable pair, the monomial exponent, the
// matrix entry, and the offending rational value.
struct CurvatureWitness {
    int var_i = 0;
    int var_j = 0;
    MultiIndex exponent;
    int row = 0;
    int col = 0;
    Rational value;
};

struct FlatnessReport {
    bool flat = true;
    // Curvature was verified for all total degrees <= checked_depth.
    int checked_depth = 0;
    std::optional<CurvatureWitness> witness;
};

struct FlatnessError : Error {
    FlatnessReport report;
    explicit FlatnessError(FlatnessReport r)
        : Error("connection is not flat"), report(std::move(r)) {}
};

// A connection on a free module of the given rank, acting on row vectors:
//   D_j(v) = d(v)/dt_j + v * A_j.
// Holds one square coefficient matrix per variable, all of the same rank
// and precision >= 1.
class Connection {
public:
    explicit Connection(std::vector<SeriesMatrix> matrices);

    static Connection zero(int nvars, int rank, int prec);

    int nvars() const { return nvars_; }
    int rank() const { return rank_; }
    int prec() const;

    const SeriesMatrix& matrix(int var) const;
    const std::vector<SeriesMatrix>& matrices() const { return matrices_; }

private:
    int nvars_;
    int rank_;
    std::vector<SeriesMatrix> matrices_;
};

// Covariant derivative D_var(v) for a 1 x rank row vector v.  The result
// precision drops by one.
SeriesMatrix d_apply(const Connection& c, int var, const SeriesMatrix& v);

// Checks the curvature d_i(A_j) - d_j(A_i) - (A_i A_j - A_j A_i) = 0 for
// all pairs, to the depth the precision supports.  This is exactly the
// condition that D_i and D_j commute on row vectors.
FlatnessReport is_flat(const Connection& c);

// One projector pass in the given variable:
//   psi(v) = sum_{i>=0} (-1)^i/i! * t_var^i * D_var^i(v),
// evaluated with the shift-by-t_var^i capped at v's precision, so the
// result keeps the precision of v.
SeriesMatrix psi_apply(const Connection& c, int var, const SeriesMatrix& v);

// Full projector: psi passes in variables n-1, n-2, ..., 0.  Requires a
// flat connection (FlatnessError otherwise).
SeriesMatrix psi_full(const Connection& c, const SeriesMatrix& v);

// Same, with an explicit pass order (a permutation of 0..n-1, applied
// left to right).  Flatness makes the result independent of the order.
SeriesMatrix psi_full(const Connection& c, const SeriesMatrix& v,
                      const std::vector<int>& order);

// The rank x rank matrix whose i-th row is psi_full(e_i).  It is congruent
// to the identity modulo the augmentation ideal and satisfies
// d(g)/dt_j = -g * A_j for every variable.
SeriesMatrix horizontal_basis(const Connection& c);

// Splits v = h + m with h horizontal (psi_full(v)) and m = v - h in the
// augmentation part of the horizontal submodule's complement.
std::pair<SeriesMatrix, SeriesMatrix> decompose(const Connection& c,
                                                const SeriesMatrix& v);

// The unique horizontal element whose constant term is the given vector.
SeriesMatrix solve_unique(const Connection& c,
                          const std::vector<Rational>& constant_term);

// Returns (g, g_inverse) with g = horizontal_basis(c); conjugating by g
// turns every coefficient matrix into zero (to the supported precision).
std::pair<SeriesMatrix, SeriesMatrix> trivialize(const Connection& c);

// Gauge transform of the coefficient matrices:
//   A_j  |->  (d(g)/dt_j + g * A_j) * g_inverse.
Connection conjugate(const Connection& c, const SeriesMatrix& g,
                     const SeriesMatrix& g_inverse);

}  // namespace flatconn
