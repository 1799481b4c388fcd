#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mills/constants.hpp"
#include "mills/enclosure.hpp"
#include "mills/rational.hpp"

namespace mills {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Exact constant of the form sum_k c_k sigma^k with sigma = sqrt(pi/2) and
/// rational c_k (k may be negative). Closed under +, -, * and covers every
/// coefficient appearing in the bounds: pi = 2 sigma^2, sqrt(2 pi) = 2 sigma,
/// pi^2 = 4 sigma^4, 8/pi = 4 sigma^-2.
class ConstExpr {
 public:
  ConstExpr() = default;
  ConstExpr(const Rational& q) { add(0, q); }  // NOLINT
  ConstExpr(int q) { add(0, Rational(q)); }    // NOLINT

  static ConstExpr sigma_power(int k, const Rational& c = 1) {
    ConstExpr e;
    e.add(k, c);
    return e;
  }
  static ConstExpr sigma() { return sigma_power(1); }
  static ConstExpr pi() { return sigma_power(2, 2); }
  static ConstExpr sqrt_2pi() { return sigma_power(1, 2); }
  static ConstExpr pi_squared() { return sigma_power(4, 4); }
  static ConstExpr constant(ConstantId id) {
    switch (id) {
      case ConstantId::pi: return pi();
      case ConstantId::sqrt_2pi: return sqrt_2pi();
      case ConstantId::sqrt_pi_over_2: return sigma();
      case ConstantId::pi_squared: return pi_squared();
    }
    throw std::logic_error("unknown constant");
  }

  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("constant expression is not rational: " + to_string());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }
  bool is_monomial() const { return terms_.size() == 1; }

  Enclosure enclose(const ConstantBrackets& brackets) const {
    Enclosure sum(0);
    for (const auto& [k, c] : terms_) sum += Enclosure(c) * brackets.sigma_power(k);
    return sum;
  }
  /// Sign if it can be settled at some precision up to `max_precision` digits.
  std::optional<int> sign(int max_precision = 160) const {
    if (terms_.empty()) return 0;
    if (is_monomial()) return sgn(terms_.begin()->second);
    for (int p = 20; p <= max_precision; p *= 2)
      if (auto s = enclose(ConstantBrackets::at_precision(p)).sign()) return s;
    return std::nullopt;
  }

  ConstExpr inverse() const {
    if (!is_monomial()) throw std::domain_error("only monomial constants can be inverted: " + to_string());
    const auto& [k, c] = *terms_.begin();
    return sigma_power(-k, 1 / c);
  }

  ConstExpr operator-() const {
    ConstExpr r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
  }
  friend ConstExpr operator+(ConstExpr a, const ConstExpr& b) {
    for (const auto& [k, c] : b.terms_) a.add(k, c);
    return a;
  }
  friend ConstExpr operator-(ConstExpr a, const ConstExpr& b) {
    for (const auto& [k, c] : b.terms_) a.add(k, -c);
    return a;
  }
  friend ConstExpr operator*(const ConstExpr& a, const ConstExpr& b) {
    ConstExpr r;
    for (const auto& [i, x] : a.terms_)
      for (const auto& [j, y] : b.terms_) r.add(i + j, x * y);
    return r;
  }
  friend ConstExpr operator/(const ConstExpr& a, const ConstExpr& b) { return a * b.inverse(); }
  ConstExpr& operator+=(const ConstExpr& o) { return *this = *this + o; }
  ConstExpr& operator-=(const ConstExpr& o) { return *this = *this - o; }
  ConstExpr& operator*=(const ConstExpr& o) { return *this = *this * o; }
  friend bool operator==(const ConstExpr& a, const ConstExpr& b) { return a.terms_ == b.terms_; }

  /// Human/parseable rendering in terms of pi and sqrt_pi_over_2,
  /// e.g. "2*pi - 4" or "3/2*pi*sqrt_pi_over_2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const int k = it->first;
      // sigma^k = (pi/2)^(k div 2) * sigma^(k mod 2), floor division.
      const int half = (k >= 0) ? k / 2 : -((-k + 1) / 2);
      const bool odd = (k - 2 * half) == 1;
      Rational c = it->second;
      if (half > 0) c /= rational_pow(Rational(2), static_cast<unsigned>(half));
      if (half < 0) c *= rational_pow(Rational(2), static_cast<unsigned>(-half));
      const bool negative = c < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      std::string factors;
      if (half != 0) factors += (half == 1) ? "pi" : "pi^" + std::to_string(half);
      if (odd) factors += std::string(factors.empty() ? "" : "*") + "sqrt_pi_over_2";
      if (factors.empty()) {
        os << c.get_str();
      } else if (c == 1) {
        os << factors;
      } else {
        os << c.get_str() << '*' << factors;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const ConstExpr& e) { return os << e.to_string(); }

 private:
  void add(int k, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  std::map<int, Rational> terms_;
};

inline bool is_zero(const ConstExpr& e) { return e.is_zero(); }

}  // namespace mills
