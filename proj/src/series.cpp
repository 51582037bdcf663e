#include "flatconn/series.hpp"

#include <algorithm>
#include <sstream>

#include "flatconn/errors.hpp"

namespace flatconn {

int total_degree(const MultiIndex& exponent) {
    int sum = 0;
    for (int e : exponent) sum += e;
    return sum;
}

namespace {

void check_nvars(int nvars) {
    if (nvars < 1) throw DimensionError("series: nvars must be >= 1");
}

void check_prec(int prec) {
    if (prec < 0) throw PrecisionError("series: negative precision");
}

void check_var(int nvars, int var) {
    if (var < 0 || var >= nvars) {
        throw DimensionError("series: variable index " + std::to_string(var) +
                             " out of range for " + std::to_string(nvars) +
                             " variables");
    }
}

void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.nvars() != b.nvars()) {
        throw DimensionError("series: mixing " + std::to_string(a.nvars()) +
                             " and " + std::to_string(b.nvars()) +
                             " variables");
    }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int nvars, int prec)
    : nvars_(nvars), prec_(prec) {
    check_nvars(nvars);
    check_prec(prec);
}

TruncatedSeries TruncatedSeries::constant(int nvars, int prec,
                                          const Rational& value) {
    TruncatedSeries s(nvars, prec);
    if (value != 0) s.terms_.emplace(MultiIndex(nvars, 0), value);
    return s;
}

TruncatedSeries TruncatedSeries::variable(int nvars, int prec, int var) {
    check_var(nvars, var);
    if (prec < 1) throw PrecisionError("series: variable needs prec >= 1");
    TruncatedSeries s(nvars, prec);
    MultiIndex e(nvars, 0);
    e[var] = 1;
    s.terms_.emplace(std::move(e), Rational(1));
    return s;
}

TruncatedSeries TruncatedSeries::from_terms(
    int nvars, int prec, std::map<MultiIndex, Rational> terms) {
    TruncatedSeries s(nvars, prec);
    for (auto it = terms.begin(); it != terms.end();) {
        const MultiIndex& e = it->first;
        if (static_cast<int>(e.size()) != nvars) {
            throw DimensionError("series: exponent length mismatch");
        }
        for (int c : e) {
            if (c < 0) throw DomainError("series: negative exponent");
        }
        if (total_degree(e) > prec) {
            throw PrecisionError("series: term of degree " +
                                 std::to_string(total_degree(e)) +
                                 " beyond precision " + std::to_string(prec));
        }
        if (it->second == 0) {
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
    s.terms_ = std::move(terms);
    return s;
}

Rational TruncatedSeries::coefficient(const MultiIndex& exponent) const {
    if (static_cast<int>(exponent.size()) != nvars_) {
        throw DimensionError("series: exponent length mismatch");
    }
    if (total_degree(exponent) > prec_) {
        throw PrecisionError("series: coefficient of degree " +
                             std::to_string(total_degree(exponent)) +
                             " is beyond precision " + std::to_string(prec_));
    }
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::constant_term() const {
    return coefficient(MultiIndex(nvars_, 0));
}

std::optional<int> TruncatedSeries::order() const {
    std::optional<int> best;
    for (const auto& [e, c] : terms_) {
        int d = total_degree(e);
        if (!best || d < *best) best = d;
    }
    return best;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.nvars() == b.nvars() && a.prec() == b.prec() &&
           a.terms() == b.terms();
}

bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) {
    return !(a == b);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_compatible(a, b);
    int prec = std::min(a.prec(), b.prec());
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, c] : a.terms()) {
        if (total_degree(e) <= prec) terms.emplace(e, c);
    }
    for (const auto& [e, c] : b.terms()) {
        if (total_degree(e) > prec) continue;
        auto [it, inserted] = terms.emplace(e, c);
        if (!inserted) it->second += c;
    }
    return TruncatedSeries::from_terms(a.nvars(), prec, std::move(terms));
}

TruncatedSeries operator-(const TruncatedSeries& a) {
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, c] : a.terms()) terms.emplace(e, -c);
    return TruncatedSeries::from_terms(a.nvars(), a.prec(), std::move(terms));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + (-b);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_compatible(a, b);
    int prec = std::min(a.prec(), b.prec());
    std::map<MultiIndex, Rational> terms;
    MultiIndex e(a.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        int da = total_degree(ea);
        if (da > prec) continue;
        for (const auto& [eb, cb] : b.terms()) {
            if (da + total_degree(eb) > prec) continue;
            for (int k = 0; k < a.nvars(); ++k) e[k] = ea[k] + eb[k];
            auto [it, inserted] = terms.emplace(e, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    return TruncatedSeries::from_terms(a.nvars(), prec, std::move(terms));
}

TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c) {
    if (c == 0) return TruncatedSeries(a.nvars(), a.prec());
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, v] : a.terms()) terms.emplace(e, v * c);
    return TruncatedSeries::from_terms(a.nvars(), a.prec(), std::move(terms));
}

TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) {
    return a * c;
}

TruncatedSeries partial_derivative(const TruncatedSeries& s, int var) {
    check_var(s.nvars(), var);
    if (s.prec() < 1) {
        throw PrecisionError(
            "series: cannot differentiate at precision 0 (one order is "
            "consumed)");
    }
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, c] : s.terms()) {
        if (e[var] == 0) continue;
        MultiIndex d = e;
        d[var] -= 1;
        terms.emplace(std::move(d), c * e[var]);
    }
    return TruncatedSeries::from_terms(s.nvars(), s.prec() - 1,
                                       std::move(terms));
}

TruncatedSeries partial_derivative(const TruncatedSeries& s,
                                   const MultiIndex& order) {
    if (static_cast<int>(order.size()) != s.nvars()) {
        throw DimensionError("series: derivative order length mismatch");
    }
    TruncatedSeries out = s;
    for (int var = 0; var < s.nvars(); ++var) {
        for (int k = 0; k < order[var]; ++k) {
            out = partial_derivative(out, var);
        }
    }
    return out;
}

TruncatedSeries mul_by_var_power(const TruncatedSeries& s, int var, int power,
                                 int cap) {
    check_var(s.nvars(), var);
    if (power < 0) throw DomainError("series: negative shift power");
    check_prec(cap);
    int prec = std::max(s.prec(), std::min(s.prec() + power, cap));
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, c] : s.terms()) {
        MultiIndex d = e;
        d[var] += power;
        if (total_degree(d) > prec) continue;
        terms.emplace(std::move(d), c);
    }
    return TruncatedSeries::from_terms(s.nvars(), prec, std::move(terms));
}

TruncatedSeries integrate(const TruncatedSeries& s, int var, int cap) {
    check_var(s.nvars(), var);
    check_prec(cap);
    int prec = std::max(s.prec(), std::min(s.prec() + 1, cap));
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, c] : s.terms()) {
        MultiIndex d = e;
        d[var] += 1;
        if (total_degree(d) > prec) continue;
        terms.emplace(std::move(d), c / Rational(d[var]));
    }
    return TruncatedSeries::from_terms(s.nvars(), prec, std::move(terms));
}

TruncatedSeries exp(const TruncatedSeries& s) {
    if (s.constant_term() != 0) {
        throw DomainError("series: exp needs a zero constant term");
    }
    TruncatedSeries result =
        TruncatedSeries::constant(s.nvars(), s.prec(), Rational(1));
    TruncatedSeries power = result;
    Rational inv_fact(1);
    // s has order >= 1, so s^k contributes nothing past k = prec.
    for (int k = 1; k <= s.prec(); ++k) {
        power = power * s;
        if (power.is_zero()) break;
        inv_fact /= k;
        result = result + power * inv_fact;
    }
    return result;
}

TruncatedSeries invert(const TruncatedSeries& s) {
    Rational c0 = s.constant_term();
    if (c0 == 0) {
        throw DomainError("series: inverse needs a nonzero constant term");
    }
    // s = c0 (1 + h) with ord h >= 1, so 1/s = (1/c0) sum (-h)^k.
    Rational inv_c0 = Rational(1) / c0;
    TruncatedSeries h =
        s * inv_c0 - TruncatedSeries::constant(s.nvars(), s.prec(), 1);
    TruncatedSeries result =
        TruncatedSeries::constant(s.nvars(), s.prec(), Rational(1));
    TruncatedSeries power = result;
    for (int k = 1; k <= s.prec(); ++k) {
        power = power * h;
        if (power.is_zero()) break;
        result = (k % 2 == 0) ? result + power : result - power;
    }
    return result * inv_c0;
}

TruncatedSeries project(const TruncatedSeries& s, int prec) {
    check_prec(prec);
    if (prec > s.prec()) {
        throw PrecisionError("series: cannot project precision " +
                             std::to_string(s.prec()) + " up to " +
                             std::to_string(prec));
    }
    std::map<MultiIndex, Rational> terms;
    for (const auto& [e, c] : s.terms()) {
        if (total_degree(e) <= prec) terms.emplace(e, c);
    }
    return TruncatedSeries::from_terms(s.nvars(), prec, std::move(terms));
}

std::string to_string(const TruncatedSeries& s) {
    if (s.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : s.terms()) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        std::string factors;
        for (int k = 0; k < s.nvars(); ++k) {
            if (e[k] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += (s.nvars() == 1) ? "t" : "t" + std::to_string(k + 1);
            if (e[k] > 1) factors += "^" + std::to_string(e[k]);
        }
        if (factors.empty()) {
            out << to_string(a);
        } else if (a == 1) {
            out << factors;
        } else {
            out << to_string(a) << "*" << factors;
        }
    }
    return out.str();
}

}  // namespace flatconn
