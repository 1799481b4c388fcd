#pragma once

// Guaranteed enclosures of the Mills ratio f(x) = (1 - Phi(x)) / phi(x), its
// derivatives, the Gaussian Q-function and F(x) = f(sqrt(2) x) / sqrt(2).

#include <stdexcept>

#include "mills/constants.hpp"
#include "mills/enclosure.hpp"
#include "mills/mills_core.hpp"
#include "mills/rational.hpp"

namespace mills {

struct MillsQuery {
  Rational x;
  Rational target_width;
  unsigned derivative_order = 0;
};

namespace detail {

/// [T_order(x), T_{order+1}(x)] for odd order, with sigma bracketed.
/// T_n = sigma * sum_{even k} x^k/k!! - sum_{odd k} x^k/k!!.
inline Enclosure taylor_bracket(const Rational& x, unsigned order, const Enclosure& sigma) {
  const Rational x2 = x * x;
  Rational even_term = 1, odd_term = x, even_sum = 0, odd_sum = 0;
  for (unsigned k = 0; k < order; k += 2) {
    even_sum += even_term;
    odd_sum += odd_term;
    even_term = even_term * x2 / (k + 2);
    odd_term = odd_term * x2 / (k + 3);
  }
  // even_term now holds x^(order+1)/(order+1)!!, used by the upper member only.
  Rational lo = sigma.lo() * even_sum - odd_sum;
  Rational hi = sigma.hi() * (even_sum + even_term) - odd_sum;
  return {lo, hi};
}

/// [Q_2m/P_2m, Q_{2m+1}/P_{2m+1}] at x > 0.
inline Enclosure convergent_bracket(const Rational& x, unsigned m) {
  auto [p_prev, q_prev] = pq_values(2 * m - 1, x);
  Rational p = x * p_prev, q = x * q_prev;
  {
    auto [pp, qq] = pq_values(2 * m - 2, x);
    p += Rational(2 * m - 1) * pp;
    q += Rational(2 * m - 1) * qq;
  }
  Rational p1 = x * p + Rational(2 * m) * p_prev;
  Rational q1 = x * q + Rational(2 * m) * q_prev;
  return {q / p, q1 / p1};
}

inline Enclosure intersect_or_throw(const Enclosure& a, const Enclosure& b) {
  auto r = a.intersect(b);
  if (!r) throw std::logic_error("inconsistent Mills ratio brackets");
  return *r;
}

}  // namespace detail

/// Enclosure of f(x), x >= 0, with width <= target_width. Taylor envelopes
/// are used for x <= 3 and convergent sandwiches for x >= 1; every computed
/// pair is intersected and orders double until the width is met. The result
/// is rounded outward to a decimal grid 10^-4 finer than the target and
/// widened by one grid unit.
inline Enclosure mills_enclosure(const Rational& x, const Rational& target_width) {
  if (x < 0) throw std::domain_error("the Mills ratio is evaluated for x >= 0");
  if (target_width <= 0) throw std::invalid_argument("target width must be positive");
  const int digits = digits_for_width(target_width) + 3;
  const Enclosure sigma = constant_enclosure(ConstantId::sqrt_pi_over_2, digits);
  if (sgn(x) == 0) return sigma;

  const Integer grid = pow10_integer(static_cast<unsigned>(digits + 1));
  Enclosure best{Rational(0), sigma.hi()};
  unsigned order = 9, m = 4;
  for (int round = 0; round < 40; ++round) {
    if (x <= 3) best = detail::intersect_or_throw(best, detail::taylor_bracket(x, order, sigma));
    if (x >= 1) best = detail::intersect_or_throw(best, detail::convergent_bracket(x, m));
    Enclosure rounded = best.rounded_outward(grid);
    // One guard unit on each side keeps the endpoints off the true value.
    Enclosure guarded(rounded.lo() - Rational(1) / grid, rounded.hi() + Rational(1) / grid);
    if (guarded.width() <= target_width) return guarded;
    order = 2 * order + 1;
    m *= 2;
  }
  throw std::runtime_error("Mills ratio enclosure did not reach the requested width");
}

inline Enclosure mills_enclosure(const MillsQuery& q) { return mills_enclosure(q.x, q.target_width); }

/// f over an enclosed argument: f is decreasing, so f([a, b]) is within
/// [f(b).lo, f(a).hi].
inline Enclosure mills_enclosure(const Enclosure& x, const Rational& target_width) {
  if (x.is_point()) return mills_enclosure(x.lo(), target_width);
  return {mills_enclosure(x.hi(), target_width).lo(), mills_enclosure(x.lo(), target_width).hi()};
}

/// f^(n)(x) = P_n(x) f(x) - Q_n(x).
inline Enclosure mills_derivative_enclosure(const MillsQuery& q) {
  const unsigned n = q.derivative_order;
  if (n == 0) return mills_enclosure(q);
  auto [p, qn] = pq_values(n, q.x);
  Rational inner = q.target_width / (abs(p) + 1);
  for (int round = 0; round < 20; ++round) {
    Enclosure f = mills_enclosure(q.x, inner);
    Enclosure d = Enclosure(p) * f - Enclosure(qn);
    if (d.width() <= q.target_width) return d;
    inner /= 16;
  }
  throw std::runtime_error("derivative enclosure did not reach the requested width");
}

namespace detail {

/// phi(x) = e^(-x^2/2) / sqrt(2 pi).
inline Enclosure gaussian_pdf_enclosure(const Rational& x, const Rational& target_width) {
  const int digits = digits_for_width(target_width) + 3;
  Enclosure e = exp_enclosure(Rational(-x * x / 2), digits);
  Enclosure r = constant_enclosure(ConstantId::sqrt_2pi, digits);
  return e / r;
}

}  // namespace detail

/// Q(x) = phi(x) f(x), the standard normal upper tail.
inline Enclosure q_function(const Rational& x, const Rational& target_width) {
  if (x < 0) throw std::domain_error("q_function is evaluated for x >= 0");
  Rational inner = target_width / 4;
  for (int round = 0; round < 20; ++round) {
    Enclosure v = detail::gaussian_pdf_enclosure(x, inner) * mills_enclosure(x, inner);
    if (v.width() <= target_width) return v;
    inner /= 16;
  }
  throw std::runtime_error("Q-function enclosure did not reach the requested width");
}

/// F(x) = f(sqrt(2) x) / sqrt(2), so that f(x) = sqrt(2) F(x / sqrt(2)).
inline Enclosure laplace_f_enclosure(const Rational& x, const Rational& target_width) {
  if (x < 0) throw std::domain_error("laplace_f_enclosure is evaluated for x >= 0");
  Rational inner = target_width / 4;
  for (int round = 0; round < 20; ++round) {
    const int digits = digits_for_width(inner) + 3;
    Enclosure root2 = sqrt_enclosure(Rational(2), digits);
    Enclosure v = mills_enclosure(Enclosure(x) * root2, inner) / root2;
    if (v.width() <= target_width) return v;
    inner /= 16;
  }
  throw std::runtime_error("F enclosure did not reach the requested width");
}

}  // namespace mills
