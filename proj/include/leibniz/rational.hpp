#ifndef LEIBNIZ_RATIONAL_HPP
#define LEIBNIZ_RATIONAL_HPP

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace leibniz {

/// Exact rational coefficient, always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

/// Parses "3", "-3/5", "0.6", "1e-3", "2.5e2" into an exact rational.
/// Decimal literals are read exactly: "0.6" is 3/5, not the nearest double.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

} // namespace leibniz

#endif
