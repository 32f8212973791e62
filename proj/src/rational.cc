#include "ddl/rational.h"

#include <algorithm>
#include <cctype>

namespace ddl {

namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer Pow10(std::size_t n) {
  Integer r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

std::optional<Rational> ParseRational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) return std::nullopt;
    Integer d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rational(Integer(std::string(num)), d);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (!whole.empty() && !AllDigits(whole)) return std::nullopt;
    if (!AllDigits(frac)) return std::nullopt;
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Integer f{std::string(frac)};
    const Integer scale = Pow10(frac.size());
    return Rational(w * scale + f, scale);
  }
  if (!AllDigits(text)) return std::nullopt;
  return Rational(Integer(std::string(text)));
}

std::string FractionString(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string FormatRational(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  Integer rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return FractionString(r);
  const int places = std::max(twos, fives);
  const bool negative = num < 0;
  if (negative) num = -num;
  const Integer scaled = num * Pow10(static_cast<std::size_t>(places)) / den;
  std::string digits = scaled.str();
  if (digits.size() <= static_cast<std::size_t>(places)) {
    digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
  }
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return negative ? "-" + digits : digits;
}

std::string DecimalString(const Rational& r, int places) {
  Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  const Integer scale = Pow10(static_cast<std::size_t>(places));
  Integer scaled = (num * scale * 2 + den) / (den * 2);
  std::string digits = scaled.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1,
                    '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative && scaled != 0 ? "-" + digits : digits;
}

}  // namespace ddl
