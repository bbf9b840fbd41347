#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gaudin {

/// Exact rational with arbitrary-precision numerator and denominator.
/// GMP keeps every value in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading sign, decimal digits, q > 0).
/// Throws ParseError on anything else, including "1//2" and "3/0".
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Binomial coefficient C(n, k) as an exact integer; zero when k < 0 or k > n.
Rational binomial(long n, long k);

/// Rising factorial (x)_k = x (x+1) ... (x+k-1), (x)_0 = 1.
Rational pochhammer(const Rational& x, long k);

}  // namespace gaudin
