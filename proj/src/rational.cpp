#include "flatconn/rational.hpp"

#include <cctype>

#include "flatconn/errors.hpp"

namespace flatconn {

Rational rational(long num, long den) {
    if (den == 0) throw DomainError("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool looks_like_integer(const std::string& text) {
    if (text.empty()) return false;
    std::size_t start = (text[0] == '-') ? 1 : 0;
    if (start == text.size()) return false;
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    return true;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
    std::string num = text;
    std::string den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!looks_like_integer(num) || !looks_like_integer(den)) {
        throw ParseError("rational: malformed value '" + text + "'");
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0) {
        throw ParseError("rational: malformed value '" + text + "'");
    }
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) {
        throw ParseError("rational: zero denominator in '" + text + "'");
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Integer factorial(unsigned n) {
    Integer result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return result;
}

Integer binomial(unsigned n, unsigned k) {
    Integer result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

}  // namespace flatconn
