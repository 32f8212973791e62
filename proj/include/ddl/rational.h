// Exact integer and rational arithmetic used throughout the semantics path.

#ifndef DDL_RATIONAL_H_
#define DDL_RATIONAL_H_

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ddl {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "17/20", "0.85", "1", ".5" into an exact rational. Returns nullopt
// on anything else; no floating point is involved.
std::optional<Rational> ParseRational(std::string_view text);

// Canonical text: a terminating decimal when the reduced denominator is of the
// form 2^i 5^j ("0.85"), otherwise "n/d".
std::string FormatRational(const Rational& r);

// Always "n/d" (or "n" for integers), reduced.
std::string FractionString(const Rational& r);

// Display-only rendering with a fixed number of places, rounded half up.
std::string DecimalString(const Rational& r, int places = 6);

}  // namespace ddl

#endif  // DDL_RATIONAL_H_
