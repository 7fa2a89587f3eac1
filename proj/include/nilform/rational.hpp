#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nilform {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional sign, decimal digits). Rejects a zero
/// denominator and anything that is not a plain integer fraction.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" form.
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace nilform
