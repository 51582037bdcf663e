#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatconn/rational.hpp"

namespace flatconn {

// Exponent vector of a monomial t1^e1 * ... * tn^en.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& exponent);

// A formal power series in n variables over the rationals, known exactly
// through total degree `prec` and unknown beyond it.  Stored sparsely as a
// lexicographically ordered map from exponent vectors to nonzero rational
// coefficients.  Values are immutable once built; all operations return new
// series.
//
// Precision is a property of the value, not of a global context:
//   - sums and products carry the minimum precision of their inputs,
//   - a partial derivative loses one order,
//   - multiplying by t_j or integrating gains one order, up to an explicit
//     cap supplied by the caller.
class TruncatedSeries {
public:
    TruncatedSeries(int nvars, int prec);

    static TruncatedSeries constant(int nvars, int prec, const Rational& value);
    static TruncatedSeries variable(int nvars, int prec, int var);

    // Validates exponents (length, nonnegativity, total degree <= prec) and
    // drops zero coefficients.
    static TruncatedSeries from_terms(int nvars, int prec,
                                      std::map<MultiIndex, Rational> terms);

    int nvars() const { return nvars_; }
    int prec() const { return prec_; }
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    // Zero when absent.  Throws PrecisionError for degrees beyond prec.
    Rational coefficient(const MultiIndex& exponent) const;
    Rational constant_term() const;

    // True when every known coefficient vanishes (says nothing about
    // degrees beyond prec).
    bool is_zero() const { return terms_.empty(); }

    // Least total degree carrying a nonzero coefficient; nullopt when the
    // series is zero to working precision (order >= prec + 1).
    std::optional<int> order() const;

private:
    int nvars_;
    int prec_;
    std::map<MultiIndex, Rational> terms_;
};

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b);

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c);
TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a);

// d/dt_var.  Result precision drops by one; throws PrecisionError at prec 0.
TruncatedSeries partial_derivative(const TruncatedSeries& s, int var);

// Iterated derivative with multi-index order.
TruncatedSeries partial_derivative(const TruncatedSeries& s,
                                   const MultiIndex& order);

// Multiplication by t_var^power.  Precision rises by `power`, capped at
// `cap` (the workspace bound); it never drops below the input precision.
TruncatedSeries mul_by_var_power(const TruncatedSeries& s, int var, int power,
                                 int cap);

// Antiderivative in t_var vanishing at t_var = 0.  Precision rises by one,
// capped at `cap`.
TruncatedSeries integrate(const TruncatedSeries& s, int var, int cap);

// exp(s) for series with zero constant term (DomainError otherwise).
TruncatedSeries exp(const TruncatedSeries& s);

// Multiplicative inverse for series with nonzero constant term
// (DomainError otherwise), via the geometric series in the augmentation
// part.
TruncatedSeries invert(const TruncatedSeries& s);

// Truncation to a lower precision (PrecisionError when target > prec).
TruncatedSeries project(const TruncatedSeries& s, int prec);

// Human-readable rendering, e.g. "1 - 1/2*t1^2*t2 + t2^3".
std::string to_string(const TruncatedSeries& s);

}  // namespace flatconn
