#pragma once

// Exact rational scalars (GMP mpq_class) plus parsing and formatting helpers.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mills {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Integer pow10_integer(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

/// 10^e as an exact rational; negative exponents allowed.
inline Rational pow10(int e) {
  if (e >= 0) return Rational(pow10_integer(static_cast<unsigned>(e)));
  Rational r(Integer(1), pow10_integer(static_cast<unsigned>(-e)));
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline Rational rational_pow(const Rational& base, unsigned e) {
  Rational out(1);
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return out;
}

inline Integer floor_integer(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_integer(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Largest multiple of 1/den not above q.
inline Rational round_down(const Rational& q, const Integer& den) {
  return make_rational(floor_integer(q * den), den);
}

/// Smallest multiple of 1/den not below q.
inline Rational round_up(const Rational& q, const Integer& den) {
  return make_rational(ceil_integer(q * den), den);
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// n!! with 0!! = 1!! = 1; (-1)!! = 1 by the usual convention.
inline Integer double_factorial(int n) {
  if (n <= 0) return 1;
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

inline int sign(const Rational& q) { return sgn(q); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p/q", integers, finite decimals and scientific notation ("1.5e-3")
/// into the exact rational they denote.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return num / den;
  }

  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  int scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("not a number: '" + std::string(s) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("not a number: '" + std::string(s) + "'");
    ++i;
    std::string_view exp = s.substr(i);
    if (exp.empty()) throw ParseError("missing exponent in '" + std::string(s) + "'");
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(std::string(exp), &used);
    } catch (const std::exception&) {
      throw ParseError("bad exponent in '" + std::string(s) + "'");
    }
    if (used != exp.size()) throw ParseError("bad exponent in '" + std::string(s) + "'");
    scale += e;
  }
  Rational value(Integer(digits, 10));
  value *= pow10(scale);
  return negative ? Rational(-value) : value;
}

/// Decimal rendering with `digits` fractional digits. `direction` < 0 rounds
/// toward -inf, > 0 toward +inf, 0 to nearest. Used for display only.
inline std::string to_decimal(const Rational& q, int digits, int direction = 0) {
  const Integer scale = pow10_integer(static_cast<unsigned>(digits));
  Rational scaled = q * scale;
  Integer n;
  if (direction < 0) {
    n = floor_integer(scaled);
  } else if (direction > 0) {
    n = ceil_integer(scaled);
  } else {
    n = floor_integer(scaled + Rational(1, 2));
  }
  const bool negative = n < 0;
  if (negative) n = -n;
  std::string body = n.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + body : body;
}

/// Number of decimal digits needed so that 10^-d <= width.
inline int digits_for_width(const Rational& width) {
  if (width <= 0) throw std::domain_error("width must be positive");
  int d = 0;
  Rational w = 1;
  while (w > width) {
    w /= 10;
    ++d;
  }
  return d;
}

}  // namespace mills
