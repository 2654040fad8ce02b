#ifndef WSUB_RATIONAL_HPP
#define WSUB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wsub {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" exactly; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Least positive rational lying in r_1·ℕ ∩ … ∩ r_k·ℕ for positive rationals.
Rational common_period(const Rational& a, const Rational& b);

} // namespace wsub

#endif
