#include "flatconn/matrix.hpp"

#include <algorithm>

#include "flatconn/errors.hpp"

namespace flatconn {

namespace {

void check_shape(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw DimensionError("matrix: shape must be positive");
    }
}

void check_same_shape(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() ||
        a.nvars() != b.nvars()) {
        throw DimensionError("matrix: shape or variable-count mismatch");
    }
}

}  // namespace

SeriesMatrix::SeriesMatrix(int rows, int cols, int nvars, int prec)
    : rows_(rows), cols_(cols), nvars_(nvars) {
    check_shape(rows, cols);
    entries_.assign(static_cast<std::size_t>(rows) * cols,
                    TruncatedSeries(nvars, prec));
}

SeriesMatrix SeriesMatrix::identity(int n, int nvars, int prec) {
    SeriesMatrix m(n, n, nvars, prec);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, TruncatedSeries::constant(nvars, prec, Rational(1)));
    }
    return m;
}

int SeriesMatrix::prec() const {
    int p = entries_.front().prec();
    for (const auto& e : entries_) p = std::min(p, e.prec());
    return p;
}

const TruncatedSeries& SeriesMatrix::at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
        throw DimensionError("matrix: index out of range");
    }
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
}

void SeriesMatrix::set(int i, int j, TruncatedSeries value) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
        throw DimensionError("matrix: index out of range");
    }
    if (value.nvars() != nvars_) {
        throw DimensionError("matrix: entry variable-count mismatch");
    }
    entries_[static_cast<std::size_t>(i) * cols_ + j] = std::move(value);
}

bool SeriesMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const TruncatedSeries& e) { return e.is_zero(); });
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() ||
        a.nvars() != b.nvars()) {
        return false;
    }
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) != b.at(i, j)) return false;
        }
    }
    return true;
}

bool operator!=(const SeriesMatrix& a, const SeriesMatrix& b) {
    return !(a == b);
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    check_same_shape(a, b);
    SeriesMatrix out(a.rows(), a.cols(), a.nvars(),
                     std::min(a.prec(), b.prec()));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.set(i, j, a.at(i, j) + b.at(i, j));
        }
    }
    return out;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
    return a + (-b);
}

SeriesMatrix operator-(const SeriesMatrix& a) {
    SeriesMatrix out(a.rows(), a.cols(), a.nvars(), a.prec());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, -a.at(i, j));
    }
    return out;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.cols() != b.rows() || a.nvars() != b.nvars()) {
        throw DimensionError("matrix: product shape mismatch");
    }
    SeriesMatrix out(a.rows(), b.cols(), a.nvars(),
                     std::min(a.prec(), b.prec()));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            TruncatedSeries acc = a.at(i, 0) * b.at(0, j);
            for (int k = 1; k < a.cols(); ++k) {
                acc = acc + a.at(i, k) * b.at(k, j);
            }
            out.set(i, j, acc);
        }
    }
    return out;
}

SeriesMatrix operator*(const SeriesMatrix& a, const Rational& c) {
    SeriesMatrix out(a.rows(), a.cols(), a.nvars(), a.prec());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j) * c);
    }
    return out;
}

SeriesMatrix operator*(const Rational& c, const SeriesMatrix& a) {
    return a * c;
}

SeriesMatrix partial_derivative(const SeriesMatrix& m, int var) {
    if (m.prec() < 1) {
        throw PrecisionError(
            "matrix: cannot differentiate at precision 0 (one order is "
            "consumed)");
    }
    SeriesMatrix out(m.rows(), m.cols(), m.nvars(), m.prec() - 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            out.set(i, j, partial_derivative(m.at(i, j), var));
        }
    }
    return out;
}

SeriesMatrix mul_by_var_power(const SeriesMatrix& m, int var, int power,
                              int cap) {
    SeriesMatrix out(m.rows(), m.cols(), m.nvars(), m.prec());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            out.set(i, j, mul_by_var_power(m.at(i, j), var, power, cap));
        }
    }
    return out;
}

SeriesMatrix project(const SeriesMatrix& m, int prec) {
    SeriesMatrix out(m.rows(), m.cols(), m.nvars(), prec);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            out.set(i, j, project(m.at(i, j), prec));
        }
    }
    return out;
}

SeriesMatrix exp(const SeriesMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("matrix: exp needs a square matrix");
    }
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).constant_term() != 0) {
                throw DomainError("matrix: exp needs zero constant terms");
            }
        }
    }
    int prec = m.prec();
    SeriesMatrix result = SeriesMatrix::identity(m.rows(), m.nvars(), prec);
    SeriesMatrix power = result;
    Rational inv_fact(1);
    for (int k = 1; k <= prec; ++k) {
        power = power * m;
        if (power.is_zero()) break;
        inv_fact /= k;
        result = result + power * inv_fact;
    }
    return result;
}

SeriesMatrix invert(const SeriesMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("matrix: inverse needs a square matrix");
    }
    int prec = m.prec();
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            Rational c = m.at(i, j).constant_term();
            if (c != (i == j ? Rational(1) : Rational(0))) {
                throw DomainError(
                    "matrix: inverse needs constant part = identity");
            }
        }
    }
    // m = I + N with N of order >= 1: 1/m = sum (-N)^k, finite at this
    // precision.
    SeriesMatrix ident = SeriesMatrix::identity(m.rows(), m.nvars(), prec);
    SeriesMatrix n = m - ident;
    SeriesMatrix result = ident;
    SeriesMatrix power = ident;
    for (int k = 1; k <= prec; ++k) {
        power = power * n;
        if (power.is_zero()) break;
        result = (k % 2 == 0) ? result + power : result - power;
    }
    return result;
}

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols) {
    check_shape(rows, cols);
    entries_.assign(static_cast<std::size_t>(rows) * cols, Rational(0));
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
}

const Rational& RationalMatrix::at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
        throw DimensionError("matrix: index out of range");
    }
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
}

void RationalMatrix::set(int i, int j, const Rational& value) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
        throw DimensionError("matrix: index out of range");
    }
    entries_[static_cast<std::size_t>(i) * cols_ + j] = value;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Rational& e) { return e == 0; });
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) != b.at(i, j)) return false;
        }
    }
    return true;
}

bool operator!=(const RationalMatrix& a, const RationalMatrix& b) {
    return !(a == b);
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix: sum shape mismatch");
    }
    RationalMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.set(i, j, a.at(i, j) + b.at(i, j));
        }
    }
    return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix: difference shape mismatch");
    }
    RationalMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.set(i, j, a.at(i, j) - b.at(i, j));
        }
    }
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matrix: product shape mismatch");
    }
    RationalMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            Rational acc(0);
            for (int k = 0; k < a.cols(); ++k) {
                acc += a.at(i, k) * b.at(k, j);
            }
            out.set(i, j, acc);
        }
    }
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const Rational& c) {
    RationalMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j) * c);
    }
    return out;
}

RationalMatrix coefficient_matrix(const SeriesMatrix& m,
                                  const MultiIndex& exponent) {
    RationalMatrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            out.set(i, j, m.at(i, j).coefficient(exponent));
        }
    }
    return out;
}

SeriesMatrix from_rational(const RationalMatrix& m, int nvars, int prec) {
    SeriesMatrix out(m.rows(), m.cols(), nvars, prec);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            out.set(i, j, TruncatedSeries::constant(nvars, prec, m.at(i, j)));
        }
    }
    return out;
}

}  // namespace flatconn
