#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "girylab/error.hpp"

namespace girylab {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. Expression templates are disabled so `auto` is safe.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline bool in_unit_interval(const Rational& x) { return x >= 0 && x <= 1; }

inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Rational clamp_unit(const Rational& x) {
  if (x < 0) return Rational(0);
  if (x > 1) return Rational(1);
  return x;
}

/// Canonical "p/q" text. Integers keep the "/1" so every rational in output
/// has the same shape.
inline std::string to_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

/// Accepts "p/q", "p", optionally signed. Rejects decimals and garbage.
inline Rational parse_rational(std::string_view text) {
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  const auto den_text = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits_ok(num_text, true) || !digits_ok(den_text, false))
    throw DomainError("malformed rational '" + std::string(text) + "', expected \"p/q\"");
  std::string num_str(num_text);
  if (num_str[0] == '+') num_str.erase(0, 1);
  const Integer num(num_str);
  const Integer den{std::string(den_text)};
  if (den == 0) throw DomainError("rational '" + std::string(text) + "' has zero denominator");
  return Rational(num, den);
}

/// 2^-k as an exact rational.
inline Rational dyadic(unsigned k) {
  Integer den = 1;
  den <<= k;
  return Rational(Integer(1), den);
}

}  // namespace girylab
