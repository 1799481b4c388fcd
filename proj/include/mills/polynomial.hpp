#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mills/const_expr.hpp"
#include "mills/enclosure.hpp"
#include "mills/rational.hpp"

namespace mills {

/// Dense univariate polynomial; coefficient i multiplies x^i. The zero
/// polynomial has no coefficients and degree -1.
template <class C>
class BasicPolynomial {
 public:
  using coefficient_type = C;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::vector<C> coefficients) : c_(std::move(coefficients)) { trim(); }
  BasicPolynomial(std::initializer_list<C> coefficients) : c_(coefficients) { trim(); }
  static BasicPolynomial constant(const C& value) { return BasicPolynomial(std::vector<C>{value}); }
  static BasicPolynomial monomial(const C& value, std::size_t power) {
    std::vector<C> c(power + 1, C(0));
    c[power] = value;
    return BasicPolynomial(std::move(c));
  }
  static BasicPolynomial x() { return monomial(C(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<C>& coefficients() const { return c_; }
  const C& operator[](std::size_t i) const { return c_[i]; }
  C coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : C(0); }
  const C& leading() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }

  /// Horner evaluation; T must support T * C -> T and T + C -> T.
  template <class T>
  T evaluate(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  BasicPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<C> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = C(static_cast<int>(i)) * c_[i];
    return BasicPolynomial(std::move(d));
  }

  /// p(x) * x^k.
  BasicPolynomial shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<C> c(k, C(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return BasicPolynomial(std::move(c));
  }

  /// Number of trailing zero coefficients, i.e. the multiplicity of x = 0.
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && is_zero_coefficient(c_[k])) ++k;
    return k;
  }

  /// p(x) / x^k for k <= low_order().
  BasicPolynomial divided_by_x_power(std::size_t k) const {
    if (k > low_order()) throw std::domain_error("polynomial not divisible by the requested power of x");
    return BasicPolynomial(std::vector<C>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  /// p(a x^m).
  BasicPolynomial substitute_monomial(const C& a, std::size_t m) const {
    std::vector<C> out(c_.empty() ? 0 : (c_.size() - 1) * m + 1, C(0));
    C power(1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      out[i * m] = c_[i] * power;
      power = power * a;
    }
    return BasicPolynomial(std::move(out));
  }

  template <class F>
  auto map(F&& fn) const {
    using D = decltype(fn(std::declval<const C&>()));
    std::vector<D> out;
    out.reserve(c_.size());
    for (const C& c : c_) out.push_back(fn(c));
    return BasicPolynomial<D>(std::move(out));
  }

  BasicPolynomial operator-() const {
    std::vector<C> c = c_;
    for (auto& v : c) v = -v;
    return BasicPolynomial(std::move(c));
  }
  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
    std::vector<C> c(std::max(a.c_.size(), b.c_.size()), C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return BasicPolynomial(std::move(c));
  }
  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) { return a + (-b); }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> c(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero_coefficient(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return BasicPolynomial(std::move(c));
  }
  friend BasicPolynomial operator*(const C& s, const BasicPolynomial& p) {
    if (is_zero_coefficient(s)) return {};
    std::vector<C> c = p.c_;
    for (auto& v : c) v = s * v;
    return BasicPolynomial(std::move(c));
  }
  BasicPolynomial& operator+=(const BasicPolynomial& o) { return *this = *this + o; }
  BasicPolynomial& operator-=(const BasicPolynomial& o) { return *this = *this - o; }
  BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = *this * o; }
  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) { return a.c_ == b.c_; }

 private:
  static bool is_zero_coefficient(const C& c) { return mills::is_zero(c); }
  void trim() {
    while (!c_.empty() && is_zero_coefficient(c_.back())) c_.pop_back();
  }

  std::vector<C> c_;
};

template <class C>
BasicPolynomial<C> pow(const BasicPolynomial<C>& p, unsigned n) {
  BasicPolynomial<C> result = BasicPolynomial<C>::constant(C(1));
  BasicPolynomial<C> base = p;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

using Polynomial = BasicPolynomial<Rational>;
/// Polynomial whose coefficients are exact constants in Q[sigma, 1/sigma].
using SymbolicPolynomial = BasicPolynomial<ConstExpr>;

inline Polynomial polynomial_from_integers(std::initializer_list<long> coefficients) {
  std::vector<Rational> c;
  for (long v : coefficients) c.emplace_back(v);
  return Polynomial(std::move(c));
}

inline Rational eval(const Polynomial& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

inline Enclosure eval(const Polynomial& p, const Enclosure& x) {
  Enclosure acc(0);
  for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) acc = acc * x + Enclosure(*it);
  return acc;
}

/// Exact long division: a = q b + r with deg r < deg b.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational t = r[static_cast<std::size_t>(i)] / lead;
    q[static_cast<std::size_t>(i - db)] = t;
    if (sgn(t) == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= t * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

/// Positive rational c such that p / c has coprime integer coefficients.
inline Rational content(const Polynomial& p) {
  if (p.is_zero()) return 0;
  Integer num = 0, den = 1;
  for (const auto& c : p.coefficients()) {
    if (sgn(c) == 0) continue;
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  return make_rational(num, den);
}

/// p divided by its positive content: integer coefficients, same signs.
inline Polynomial primitive_part(const Polynomial& p) {
  if (p.is_zero()) return p;
  const Rational c = content(p);
  std::vector<Rational> out;
  out.reserve(p.size());
  for (const auto& v : p.coefficients()) out.emplace_back(v / c);
  return Polynomial(std::move(out));
}

inline Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return Rational(1 / p.leading()) * p;
}

/// Monic greatest common divisor (Euclid, contents stripped each step).
inline Polynomial gcd(Polynomial a, Polynomial b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = primitive_part(r);
  }
  return monic(a);
}

/// Square-free part p / gcd(p, p').
inline Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  Polynomial g = gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  return divmod(p, g).first;
}

/// "c_k x^k + ... + c_0" with rational coefficients in lowest terms.
inline std::string to_string(const Polynomial& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << ' ';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

inline std::string to_string(const SymbolicPolynomial& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const ConstExpr& c = p[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << c.to_string() << ')';
    if (i >= 1) os << ' ' << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

/// Rational polynomial whose coefficients are the lower (direction < 0) or
/// upper (> 0) endpoints of the symbolic coefficients. For x >= 0 this gives
/// a pointwise lower (upper) bound of the symbolic polynomial.
inline Polynomial bracket_coefficients(const SymbolicPolynomial& p, const ConstantBrackets& brackets, int direction) {
  std::vector<Rational> out;
  out.reserve(p.size());
  for (const auto& c : p.coefficients()) {
    if (c.is_rational()) {
      out.push_back(c.rational_value());
    } else {
      Enclosure e = c.enclose(brackets);
      out.push_back(direction < 0 ? e.lo() : e.hi());
    }
  }
  return Polynomial(std::move(out));
}

inline SymbolicPolynomial to_symbolic(const Polynomial& p) {
  return p.map([](const Rational& q) { return ConstExpr(q); });
}

}  // namespace mills
