#pragma once

// Rigorous rational brackets of pi, sqrt(2 pi), sqrt(pi/2), pi^2, square roots
// and the exponential.

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mills/enclosure.hpp"
#include "mills/rational.hpp"

namespace mills {

enum class ConstantId { pi, sqrt_2pi, sqrt_pi_over_2, pi_squared };

/// Precision level that selects the hand-picked brackets
/// 333/106 < pi < 355/113, 5/2 < sqrt(2 pi) < 188/75, 851/679 < sqrt(pi/2) < 94/75.
inline constexpr int kCoarse = 0;

inline std::string to_string(ConstantId id) {
  switch (id) {
    case ConstantId::pi: return "PI";
    case ConstantId::sqrt_2pi: return "SQRT_2PI";
    case ConstantId::sqrt_pi_over_2: return "SQRT_PI_OVER_2";
    case ConstantId::pi_squared: return "PI_SQUARED";
  }
  return "?";
}

inline Enclosure sqrt_enclosure(const Rational& x, int precision) {
  if (x < 0) throw std::domain_error("sqrt of a negative number");
  if (precision < 0) throw std::invalid_argument("negative precision");
  if (x == 0) return Enclosure(0);
  // sqrt(n/d) = sqrt(n d) / d; take an integer square root of n d 10^(2p).
  const Integer scale = pow10_integer(static_cast<unsigned>(precision));
  Integer radicand = x.get_num() * x.get_den() * scale * scale;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  const Integer den = x.get_den() * scale;
  if (root * root == radicand) return Enclosure(make_rational(root, den));
  return {make_rational(root, den), make_rational(root + 1, den)};
}

/// sqrt over an enclosure: monotone, so bracket each endpoint outward.
inline Enclosure sqrt_enclosure(const Enclosure& x, int precision) {
  if (x.lo() < 0) throw std::domain_error("sqrt of an enclosure reaching below 0");
  return {sqrt_enclosure(x.lo(), precision).lo(), sqrt_enclosure(x.hi(), precision).hi()};
}

namespace detail {

/// atan(1/k) by its alternating series; consecutive partial sums envelope it.
inline Enclosure atan_inverse(unsigned k, int digits) {
  const Rational tol = pow10(-digits);
  const Rational k2 = Rational(k * k);
  Rational power = Rational(1, k);  // 1/k^(2n+1)
  Rational sum = 0;
  for (unsigned n = 0;; ++n) {
    Rational term = power / (2 * n + 1);
    Rational next = (n % 2 == 0) ? Rational(sum + term) : Rational(sum - term);
    if (term <= tol) return {std::min(sum, next), std::max(sum, next)};
    sum = next;
    power /= k2;
  }
}

inline Enclosure pi_enclosure(int digits) {
  static std::mutex mutex;
  static int cached_digits = -1;
  static Enclosure cached;
  std::lock_guard lock(mutex);
  if (digits > cached_digits) {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    const int work = digits + 3;
    Enclosure value = Enclosure(16) * atan_inverse(5, work) - Enclosure(4) * atan_inverse(239, work);
    cached = value.rounded_outward(pow10_integer(static_cast<unsigned>(digits + 2)));
    cached_digits = digits;
  }
  return cached;
}

inline Enclosure raw_constant(ConstantId id, int digits) {
  const Enclosure pi = pi_enclosure(digits + 2);
  switch (id) {
    case ConstantId::pi: return pi;
    case ConstantId::pi_squared: return square(pi);
    case ConstantId::sqrt_2pi: return sqrt_enclosure(Enclosure(2) * pi, digits + 2);
    case ConstantId::sqrt_pi_over_2: return sqrt_enclosure(pi / Enclosure(2), digits + 2);
  }
  throw std::logic_error("unknown constant");
}

/// Convergents whose partial quotients are shared by every point of e.
inline std::vector<Rational> shared_convergents(const Enclosure& e) {
  std::vector<Rational> out;
  Rational lo = e.lo(), hi = e.hi();
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int guard = 0; guard < 100000; ++guard) {
    Integer a = floor_integer(lo);
    if (floor_integer(hi) != a) break;
    Integer h = a * h1 + h2, k = a * k1 + k2;
    out.push_back(make_rational(h, k));
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    Rational flo = lo - a, fhi = hi - a;
    if (flo == 0) break;
    lo = 1 / fhi;
    hi = 1 / flo;
  }
  return out;
}

inline Enclosure paper_bracket(ConstantId id) {
  switch (id) {
    case ConstantId::pi: return {make_rational(333, 106), make_rational(355, 113)};
    case ConstantId::sqrt_2pi: return {make_rational(5, 2), make_rational(188, 75)};
    case ConstantId::sqrt_pi_over_2: return {make_rational(851, 679), make_rational(94, 75)};
    case ConstantId::pi_squared: return square(paper_bracket(ConstantId::pi));
  }
  throw std::logic_error("unknown constant");
}

}  // namespace detail

/// Bracket of a named constant with width <= 10^-precision, formed by two
/// consecutive continued-fraction convergents. kCoarse returns the classic
/// hand-picked fractions.
inline Enclosure constant_enclosure(ConstantId id, int precision) {
  if (precision < 0) throw std::invalid_argument("negative precision");
  if (precision == kCoarse) return detail::paper_bracket(id);
  const Rational target = pow10(-precision);
  for (int digits = 2 * precision + 10;; digits *= 2) {
    const auto convergents = detail::shared_convergents(detail::raw_constant(id, digits));
    for (std::size_t i = 1; i < convergents.size(); ++i) {
      const Rational& a = convergents[i - 1];
      const Rational& b = convergents[i];
      if (abs(b - a) <= target) return {std::min(a, b), std::max(a, b)};
    }
  }
}

namespace detail {

/// e^-u for 0 <= u <= 1/2 by alternating partial sums, to absolute width <= tol.
inline Enclosure exp_neg_small(const Rational& u, const Rational& tol) {
  Rational term = 1, sum = 1;
  for (unsigned n = 1;; ++n) {
    term *= u;
    term /= n;
    Rational next = (n % 2 == 1) ? Rational(sum - term) : Rational(sum + term);
    if (term <= tol) return {std::min(sum, next), std::max(sum, next)};
    sum = next;
  }
}

/// e^-t for t >= 0, absolute width <= 10^-precision / 2.
inline Enclosure exp_neg(const Rational& t, int precision) {
  unsigned halvings = 0;
  Rational u = t;
  while (u > Rational(1, 2)) {
    u /= 2;
    ++halvings;
  }
  Integer amplification = 1;
  amplification <<= halvings + 3;
  const Rational tol = pow10(-precision) / amplification;
  const Integer grid = ceil_integer(1 / tol);
  Enclosure value = exp_neg_small(u, tol).rounded_outward(grid);
  for (unsigned i = 0; i < halvings; ++i) value = square(value).rounded_outward(grid);
  return value;
}

}  // namespace detail

/// Enclosure of e^x with width <= 10^-precision. Negative arguments use the
/// alternating series (with argument halving and squaring); positive ones go
/// through 1 / e^-x.
inline Enclosure exp_enclosure(const Rational& x, int precision) {
  if (precision < 0) throw std::invalid_argument("negative precision");
  if (x == 0) return Enclosure(1);
  const Integer grid = pow10_integer(static_cast<unsigned>(precision + 1));
  if (x < 0) return detail::exp_neg(-x, precision + 1).rounded_outward(grid);
  // width(1/[a,b]) <= width / a^2 with a ~ e^-x, so spend 2x/ln(10) extra digits.
  const int extra = static_cast<int>(std::ceil(to_double(x) * 0.8686)) + 2;
  Enclosure inv = detail::exp_neg(x, precision + 1 + extra);
  return (Enclosure(1) / inv).rounded_outward(grid);
}

/// Exponential of an enclosed argument, using monotonicity.
inline Enclosure exp_enclosure(const Enclosure& x, int precision) {
  return {exp_enclosure(x.lo(), precision).lo(), exp_enclosure(x.hi(), precision).hi()};
}

/// Brackets of sigma = sqrt(pi/2) and pi, the two constants every symbolic
/// coefficient is resolved against (pi = 2 sigma^2, sqrt(2 pi) = 2 sigma).
struct ConstantBrackets {
  Enclosure sigma;
  Enclosure pi;

  static ConstantBrackets from_sqrt_2pi(const Enclosure& sqrt_2pi) {
    Enclosure s = sqrt_2pi / Enclosure(2);
    return {s, Enclosure(2) * square(s)};
  }
  /// 5/2 < sqrt(2 pi) < 188/75, as used for the Taylor envelopes on [0, 1].
  static ConstantBrackets taylor_coarse() {
    return from_sqrt_2pi(constant_enclosure(ConstantId::sqrt_2pi, kCoarse));
  }
  /// 851/679 < sqrt(pi/2) < 94/75 together with 333/106 < pi < 355/113.
  static ConstantBrackets sigma_pi_coarse() {
    return {constant_enclosure(ConstantId::sqrt_pi_over_2, kCoarse),
            constant_enclosure(ConstantId::pi, kCoarse)};
  }
  static ConstantBrackets at_precision(int precision) {
    return {constant_enclosure(ConstantId::sqrt_pi_over_2, precision),
            constant_enclosure(ConstantId::pi, precision)};
  }

  /// sigma^k. Even powers come from the pi bracket, odd ones from
  /// sigma * (pi/2)^j.
  Enclosure sigma_power(int k) const {
    if (k == 0) return Enclosure(1);
    if (k < 0) return Enclosure(1) / sigma_power(-k);
    const Enclosure half_pi = pi / Enclosure(2);
    if (k % 2 == 0) return pow(half_pi, static_cast<unsigned>(k / 2));
    return sigma * pow(half_pi, static_cast<unsigned>((k - 1) / 2));
  }
};

}  // namespace mills
