#pragma once

#include <string>
#include <vector>

#include "flatconn/series.hpp"

namespace flatconn {

// Dense matrix of truncated series sharing one variable count.  Row vectors
// (1 x r) double as module elements.  The matrix precision is the minimum
// entry precision.
class SeriesMatrix {
public:
    SeriesMatrix(int rows, int cols, int nvars, int prec);

    static SeriesMatrix identity(int n, int nvars, int prec);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }
    int prec() const;

    const TruncatedSeries& at(int i, int j) const;
    void set(int i, int j, TruncatedSeries value);

    bool is_zero() const;

private:
    int rows_;
    int cols_;
    int nvars_;
    std::vector<TruncatedSeries> entries_;
};

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);
bool operator!=(const SeriesMatrix& a, const SeriesMatrix& b);

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a);
SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator*(const SeriesMatrix& a, const Rational& c);
SeriesMatrix operator*(const Rational& c, const SeriesMatrix& a);

SeriesMatrix partial_derivative(const SeriesMatrix& m, int var);
SeriesMatrix mul_by_var_power(const SeriesMatrix& m, int var, int power,
                              int cap);
SeriesMatrix project(const SeriesMatrix& m, int prec);

// exp(M) for matrices whose entries all have zero constant term.
SeriesMatrix exp(const SeriesMatrix& m);

// Inverse of a square matrix congruent to an invertible constant matrix;
// here restricted to M = C + N with C the identity (the only case needed):
// throws DomainError when the constant part is not the identity.
SeriesMatrix invert(const SeriesMatrix& m);

// Constant rational matrices, used for coefficientwise recurrences.
class RationalMatrix {
public:
    RationalMatrix(int rows, int cols);

    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Rational& at(int i, int j) const;
    void set(int i, int j, const Rational& value);

    bool is_zero() const;

private:
    int rows_;
    int cols_;
    std::vector<Rational> entries_;
};

bool operator==(const RationalMatrix& a, const RationalMatrix& b);
bool operator!=(const RationalMatrix& a, const RationalMatrix& b);

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const RationalMatrix& a, const Rational& c);

// The matrix of coefficients of the given exponent.
RationalMatrix coefficient_matrix(const SeriesMatrix& m,
                                  const MultiIndex& exponent);

// Embeds a constant matrix as a series matrix.
SeriesMatrix from_rational(const RationalMatrix& m, int nvars, int prec);

}  // namespace flatconn
