#pragma once

#include <map>

#include "flatconn/series.hpp"

namespace flatconn {

// A differential operator sum_k b_k * d^k in normal form: series
// coefficients on the left, derivative monomials d^k = d_1^{k_1}...d_n^{k_n}
// on the right.  Composition rewrites d_j * b into b * d_j + (db/dt_j) via
// the Leibniz rule.
class DiffOperator {
public:
    explicit DiffOperator(int nvars);

    // The multiplication operator s * (-).
    static DiffOperator multiplication(const TruncatedSeries& s);

    // d_var with coefficient 1 at the given precision.
    static DiffOperator partial(int nvars, int var, int prec);

    // Validates exponent lengths and drops zero coefficients.
    static DiffOperator from_terms(
        int nvars, std::map<MultiIndex, TruncatedSeries> terms);

    int nvars() const { return nvars_; }

    // Largest total derivative order among the terms (0 for the zero
    // operator).
    int order() const;

    const std::map<MultiIndex, TruncatedSeries>& terms() const {
        return terms_;
    }

    bool is_zero() const { return terms_.empty(); }

private:
    int nvars_;
    std::map<MultiIndex, TruncatedSeries> terms_;
};

bool operator==(const DiffOperator& a, const DiffOperator& b);
bool operator!=(const DiffOperator& a, const DiffOperator& b);

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
DiffOperator operator-(const DiffOperator& a);
DiffOperator operator*(const DiffOperator& a, const Rational& c);

// Applies the operator to a series.  The result precision drops by the
// operator order; PrecisionError when the input is too shallow.
TruncatedSeries apply(const DiffOperator& op, const TruncatedSeries& s);

// Normal-form composition p after q.  Throws PrecisionError when the
// Leibniz rewriting would need derivatives beyond a coefficient's
// precision.
DiffOperator compose(const DiffOperator& p, const DiffOperator& q);

// compose(p, q) - compose(q, p).
DiffOperator commutator(const DiffOperator& p, const DiffOperator& q);

// The projector factor (1/i!) * (-t_var)^i * d_var^i as an operator whose
// coefficient lives at precision `prec`.
DiffOperator psi_component(int nvars, int var, int index, int prec);

std::string to_string(const DiffOperator& op);

}  // namespace flatconn
