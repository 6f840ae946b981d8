#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace groupmms {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational value, kept in lowest terms with a positive denominator.
// All utilities and feasibility comparisons run on this type; floating point
// is reserved for bound formulas that only pick parameters.
using Rational = boost::rational<BigInt>;

// Canonical form "num/den", e.g. "3/4", "-1/2", "5/1".
std::string format_rational(const Rational& r);

// Accepts "num/den" or the integer shorthand "num" (meaning num/1).
// Throws PARSE_ERROR on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

Rational pow_rational(Rational base, std::uint64_t exp);

// Smallest integer >= r.
BigInt ceil_rational(const Rational& r);

// ceil(log2(x)) for x >= 1.
int ceil_log2(std::uint64_t x);

}  // namespace groupmms
