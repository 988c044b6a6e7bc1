#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace credal {

/// Exact rational number. GMP keeps every value in canonical form
/// (positive denominator, gcd(num, den) = 1) after each arithmetic
/// operation, but not after two-argument construction: use ratio().
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// num/den in canonical form. den must be nonzero.
Rational ratio(long num, long den);

/// Parses "p/q", an integer, or a finite decimal ("0.25") into a reduced
/// rational. Throws ParseError on anything else, including a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" with q > 1, or "p" for integers.
std::string to_string(const Rational& value);

std::string to_string(const RationalVector& values);

Rational sum(const RationalVector& values);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace credal
