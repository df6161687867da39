#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "flexlist/error.hpp"

namespace flexlist {

// Expression templates are off so that `auto` always yields a value.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(const BigInt& p, const BigInt& q) {
  require(q != 0, ErrorKind::InvalidArgument, "zero denominator");
  return Rational(p, q);
}

inline Rational make_rational(std::int64_t p, std::int64_t q = 1) {
  return make_rational(BigInt(p), BigInt(q));
}

/// Canonical "p/q" form; integers keep the "/1" suffix.
inline std::string to_string(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Accepts "p/q" or a bare integer "p", optionally signed.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view p = text.substr(0, slash);
  std::string_view q = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(p) || !valid_int(q) || q[0] == '-' || q[0] == '+')
    fail(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
  std::string ps(p[0] == '+' ? p.substr(1) : p);
  BigInt num(ps), den{std::string(q)};
  if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

inline BigInt pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline BigInt factorial(unsigned n) {
  BigInt f(1);
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Residue in [0, m).
inline std::int64_t mod_floor(const BigInt& value, std::int64_t m) {
  BigInt r = value % m;
  if (r < 0) r += m;
  return r.convert_to<std::int64_t>();
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace flexlist
