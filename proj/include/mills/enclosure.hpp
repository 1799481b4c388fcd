#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mills/rational.hpp"

namespace mills {

/// Closed interval [lo, hi] with exact rational endpoints, guaranteed to
/// contain some real value. All arithmetic is outward: if the operands contain
/// x and y, the result contains x op y.
class Enclosure {
 public:
  Enclosure() = default;
  Enclosure(const Rational& point) : lo_(point), hi_(point) {}  // NOLINT
  Enclosure(int point) : lo_(point), hi_(point) {}              // NOLINT
  Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::invalid_argument("enclosure with lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool strictly_contains(const Rational& x) const { return lo_ < x && x < hi_; }
  bool positive() const { return lo_ > 0; }
  bool negative() const { return hi_ < 0; }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
  bool intersects(const Enclosure& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }
  /// True when every point of *this is below every point of other.
  bool below(const Enclosure& other) const { return hi_ < other.lo_; }

  /// Sign if determined, otherwise nullopt.
  std::optional<int> sign() const {
    if (lo_ > 0) return 1;
    if (hi_ < 0) return -1;
    if (is_point()) return 0;
    return std::nullopt;
  }

  std::optional<Enclosure> intersect(const Enclosure& other) const {
    if (!intersects(other)) return std::nullopt;
    return Enclosure(std::max(lo_, other.lo_), std::min(hi_, other.hi_));
  }

  Enclosure hull(const Enclosure& other) const {
    return {std::min(lo_, other.lo_), std::max(hi_, other.hi_)};
  }

  /// Endpoints moved outward onto the grid (1/den) Z; keeps rationals small.
  Enclosure rounded_outward(const Integer& den) const {
    return {round_down(lo_, den), round_up(hi_, den)};
  }

  Enclosure operator-() const { return {-hi_, -lo_}; }

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    return {a.lo_ - b.hi_, a.hi_ - b.lo_};
  }
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    if (a.lo_ >= 0 && b.lo_ >= 0) return {a.lo_ * b.lo_, a.hi_ * b.hi_};
    Rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.contains_zero()) throw std::domain_error("enclosure division by an interval containing 0");
    return a * Enclosure(1 / b.hi_, 1 / b.lo_);
  }

  Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }
  Enclosure& operator-=(const Enclosure& o) { return *this = *this - o; }
  Enclosure& operator*=(const Enclosure& o) { return *this = *this * o; }
  Enclosure& operator/=(const Enclosure& o) { return *this = *this / o; }

  friend bool operator==(const Enclosure& a, const Enclosure& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Enclosure& e) {
    return os << '[' << e.lo_ << ", " << e.hi_ << ']';
  }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

/// Tight square: [0, max^2] when the interval straddles zero.
inline Enclosure square(const Enclosure& e) {
  if (e.lo() >= 0) return {e.lo() * e.lo(), e.hi() * e.hi()};
  if (e.hi() <= 0) return {e.hi() * e.hi(), e.lo() * e.lo()};
  Rational m = -e.lo();
  if (e.hi() > m) m = e.hi();
  return {Rational(0), m * m};
}

inline Enclosure pow(const Enclosure& e, unsigned n) {
  if (n == 0) return Enclosure(1);
  if (n % 2 == 0) return pow(square(e), n / 2);
  if (e.lo() >= 0) return {rational_pow(e.lo(), n), rational_pow(e.hi(), n)};
  if (e.hi() <= 0) return {rational_pow(e.lo(), n), rational_pow(e.hi(), n)};
  return e * pow(e, n - 1);
}

/// "[lo, hi]" with endpoints rounded outward to `digits` decimals.
inline std::string to_decimal(const Enclosure& e, int digits) {
  return "[" + to_decimal(e.lo(), digits, -1) + ", " + to_decimal(e.hi(), digits, +1) + "]";
}

}  // namespace mills
