#ifndef SYZMIRROR_RATIONAL_HPP
#define SYZMIRROR_RATIONAL_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace syzmirror
{

// Exact rationals. Arithmetic keeps mpq_class canonical, but the two-argument
// constructor does not; build fractions with ratio().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational ratio(const Integer &num, const Integer &den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

struct RationalParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Accepts "p" or "p/q" with optional leading sign on p; q must be a positive
// integer. The result is canonicalized.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational &r);

bool is_integer(const Rational &r);

Rational factorial(long n);

} // namespace syzmirror

#endif
