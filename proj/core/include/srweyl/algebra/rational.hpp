#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace srweyl::algebra {

/// Exact rational number. GMP keeps it canonical (coprime, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& value);

/// Accepts "p", "-p", "p/q". Throws ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace srweyl::algebra
