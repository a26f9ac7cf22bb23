#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sbp {

// GMP keeps mpq values canonical (positive denominator, reduced) after every
// arithmetic operation; only construction from raw parts needs canonicalize().
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p", "p/q" (q != 0) into canonical form. Throws UsageError.
Rational parse_rational(std::string_view text);

/// Like parse_rational, but also takes decimals ("-1.25e-3"), converted exactly.
Rational parse_number(std::string_view text);

/// Canonical "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Decimal rendering with `digits` significant digits, C "%.*e" style,
/// correctly rounded from the exact value.
std::string to_scientific(const Rational& value, int digits);

double to_double(const Rational& value);

/// Bits in numerator plus bits in denominator; pivot-size heuristic.
std::size_t bit_length(const Rational& value);

/// Integer power with the 0^0 = 1 convention.
Rational ipow(long base, unsigned exponent);

}  // namespace sbp
