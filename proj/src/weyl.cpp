#include "flatconn/weyl.hpp"

#include <algorithm>
#include <sstream>

#include "flatconn/errors.hpp"

namespace flatconn {

namespace {

void check_nvars_match(int a, int b) {
    if (a != b) {
        throw DimensionError("operator: mixing " + std::to_string(a) +
                             " and " + std::to_string(b) + " variables");
    }
}

// All multi-indices j with 0 <= j <= k componentwise, in odometer order.
std::vector<MultiIndex> sub_indices(const MultiIndex& k) {
    std::vector<MultiIndex> out;
    MultiIndex j(k.size(), 0);
    while (true) {
        out.push_back(j);
        std::size_t axis = 0;
        while (axis < k.size()) {
            if (j[axis] < k[axis]) {
                ++j[axis];
                break;
            }
            j[axis] = 0;
            ++axis;
        }
        if (axis == k.size()) break;
    }
    return out;
}

Rational binomial_product(const MultiIndex& k, const MultiIndex& j) {
    Integer prod(1);
    for (std::size_t a = 0; a < k.size(); ++a) {
        prod *= binomial(static_cast<unsigned>(k[a]),
                         static_cast<unsigned>(j[a]));
    }
    return Rational(prod);
}

}  // namespace

DiffOperator::DiffOperator(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw DimensionError("operator: nvars must be >= 1");
}

DiffOperator DiffOperator::multiplication(const TruncatedSeries& s) {
    DiffOperator op(s.nvars());
    if (!s.is_zero()) op.terms_.emplace(MultiIndex(s.nvars(), 0), s);
    return op;
}

DiffOperator DiffOperator::partial(int nvars, int var, int prec) {
    DiffOperator op(nvars);
    if (var < 0 || var >= nvars) {
        throw DimensionError("operator: variable index out of range");
    }
    MultiIndex k(nvars, 0);
    k[var] = 1;
    op.terms_.emplace(std::move(k),
                      TruncatedSeries::constant(nvars, prec, Rational(1)));
    return op;
}

DiffOperator DiffOperator::from_terms(
    int nvars, std::map<MultiIndex, TruncatedSeries> terms) {
    DiffOperator op(nvars);
    for (auto it = terms.begin(); it != terms.end();) {
        if (static_cast<int>(it->first.size()) != nvars) {
            throw DimensionError("operator: derivative exponent length "
                                 "mismatch");
        }
        for (int c : it->first) {
            if (c < 0) throw DomainError("operator: negative derivative "
                                         "exponent");
        }
        check_nvars_match(nvars, it->second.nvars());
        if (it->second.is_zero()) {
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
    op.terms_ = std::move(terms);
    return op;
}

int DiffOperator::order() const {
    int best = 0;
    for (const auto& [k, b] : terms_) best = std::max(best, total_degree(k));
    return best;
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.nvars() == b.nvars() && a.terms() == b.terms();
}

bool operator!=(const DiffOperator& a, const DiffOperator& b) {
    return !(a == b);
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
    check_nvars_match(a.nvars(), b.nvars());
    std::map<MultiIndex, TruncatedSeries> terms = a.terms();
    for (const auto& [k, c] : b.terms()) {
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second = it->second + c;
        }
    }
    return DiffOperator::from_terms(a.nvars(), std::move(terms));
}

DiffOperator operator-(const DiffOperator& a) {
    std::map<MultiIndex, TruncatedSeries> terms;
    for (const auto& [k, c] : a.terms()) terms.emplace(k, -c);
    return DiffOperator::from_terms(a.nvars(), std::move(terms));
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
    return a + (-b);
}

DiffOperator operator*(const DiffOperator& a, const Rational& c) {
    std::map<MultiIndex, TruncatedSeries> terms;
    for (const auto& [k, s] : a.terms()) terms.emplace(k, s * c);
    return DiffOperator::from_terms(a.nvars(), std::move(terms));
}

TruncatedSeries apply(const DiffOperator& op, const TruncatedSeries& s) {
    check_nvars_match(op.nvars(), s.nvars());
    int ord = op.order();
    if (s.prec() < ord) {
        throw PrecisionError("operator: applying order " +
                             std::to_string(ord) + " at precision " +
                             std::to_string(s.prec()));
    }
    TruncatedSeries acc(s.nvars(), s.prec() - ord);
    for (const auto& [k, b] : op.terms()) {
        acc = acc + b * partial_derivative(s, k);
    }
    return acc;
}

DiffOperator compose(const DiffOperator& p, const DiffOperator& q) {
    check_nvars_match(p.nvars(), q.nvars());
    std::map<MultiIndex, TruncatedSeries> terms;
    for (const auto& [kp, b] : p.terms()) {
        const std::vector<MultiIndex> subs = sub_indices(kp);
        for (const auto& [kq, c] : q.terms()) {
            // d^kp (c d^kq) = sum_{j <= kp} C(kp, j) d^j(c) d^{kp - j + kq}
            for (const MultiIndex& j : subs) {
                TruncatedSeries dc = partial_derivative(c, j);
                if (dc.is_zero()) continue;
                TruncatedSeries coeff = b * dc * binomial_product(kp, j);
                if (coeff.is_zero()) continue;
                MultiIndex dexp(kp.size());
                for (std::size_t a = 0; a < kp.size(); ++a) {
                    dexp[a] = kp[a] - j[a] + kq[a];
                }
                auto it = terms.find(dexp);
                if (it == terms.end()) {
                    terms.emplace(std::move(dexp), coeff);
                } else {
                    it->second = it->second + coeff;
                }
            }
        }
    }
    return DiffOperator::from_terms(p.nvars(), std::move(terms));
}

DiffOperator commutator(const DiffOperator& p, const DiffOperator& q) {
    return compose(p, q) - compose(q, p);
}

DiffOperator psi_component(int nvars, int var, int index, int prec) {
    if (index < 0) throw DomainError("operator: negative projector index");
    if (var < 0 || var >= nvars) {
        throw DimensionError("operator: variable index out of range");
    }
    MultiIndex e(nvars, 0);
    e[var] = index;
    Rational sign = (index % 2 == 0) ? Rational(1) : Rational(-1);
    Rational coef = sign / Rational(factorial(static_cast<unsigned>(index)));
    std::map<MultiIndex, Rational> mono;
    mono.emplace(e, coef);
    std::map<MultiIndex, TruncatedSeries> terms;
    terms.emplace(e, TruncatedSeries::from_terms(nvars, prec, std::move(mono)));
    return DiffOperator::from_terms(nvars, std::move(terms));
}

std::string to_string(const DiffOperator& op) {
    if (op.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, b] : op.terms()) {
        if (!first) out << " + ";
        first = false;
        std::string ds;
        for (int a = 0; a < op.nvars(); ++a) {
            if (k[a] == 0) continue;
            if (!ds.empty()) ds += "*";
            ds += (op.nvars() == 1) ? "d" : "d" + std::to_string(a + 1);
            if (k[a] > 1) ds += "^" + std::to_string(k[a]);
        }
        if (ds.empty()) {
            out << "(" << to_string(b) << ")";
        } else {
            out << "(" << to_string(b) << ")*" << ds;
        }
    }
    return out.str();
}

}  // namespace flatconn
