#pragma once

#include <gmpxx.h>

#include <string>

namespace flatconn {

// Exact rational arithmetic is delegated to GMP.  mpq_class values are kept
// canonical (lowest terms, positive denominator) by every GMP operation, so
// equality is plain value equality.
using Rational = mpq_class;
using Integer = mpz_class;

// Builds num/den in canonical form.  Throws DomainError when den == 0.
Rational rational(long num, long den = 1);

// Parses "p", "-p", or "p/q" with q > 0 after canonicalization.
// Throws ParseError on malformed text or a zero denominator.
Rational rational_from_string(const std::string& text);

// Renders canonical form: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

}  // namespace flatconn
