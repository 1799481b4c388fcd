#pragma once

// Convergent polynomials P_n, Q_n of the Mills ratio, its continued fraction,
// Taylor envelopes at the origin and the asymptotic truncations J_n.

#include <deque>
#include <mutex>
#include <utility>
#include <stdexcept>
#include <vector>

#include "mills/const_expr.hpp"
#include "mills/constants.hpp"
#include "mills/polynomial.hpp"
#include "mills/rational.hpp"

namespace mills {

/// f^(n) = P_n f - Q_n; Q_n / P_n is the n-th convergent of f.
struct ConvergentPair {
  unsigned n = 0;
  Polynomial P;
  Polynomial Q;
};

/// P_n = x P_{n-1} + (n-1) P_{n-2}, same recurrence for Q_n; P_0 = 1, P_1 = x,
/// Q_0 = 0, Q_1 = 1. Memoized.
inline const ConvergentPair& pq(unsigned n) {
  static std::mutex mutex;
  static std::deque<ConvergentPair> table;  // deque: references survive growth
  std::lock_guard lock(mutex);
  if (table.empty()) {
    table.push_back({0, Polynomial{Rational(1)}, Polynomial()});
    table.push_back({1, Polynomial::x(), Polynomial{Rational(1)}});
  }
  while (table.size() <= n) {
    const unsigned k = static_cast<unsigned>(table.size());
    const Polynomial x = Polynomial::x();
    const Rational m(k - 1);
    Polynomial P = x * table[k - 1].P + m * table[k - 2].P;
    Polynomial Q = x * table[k - 1].Q + m * table[k - 2].Q;
    table.push_back({k, std::move(P), std::move(Q)});
  }
  return table[n];
}

/// P_n = n! sum_k x^(n-2k) / (2^k k! (n-2k)!).
inline Polynomial pn_explicit(unsigned n) {
  std::vector<Rational> c(n + 1);
  const Integer nf = factorial(n);
  for (unsigned k = 0; 2 * k <= n; ++k) {
    Integer den = factorial(k) * factorial(n - 2 * k);
    den <<= k;
    c[n - 2 * k] = make_rational(nf, den);
  }
  return Polynomial(std::move(c));
}

/// Probabilists' Hermite polynomial He_n (He_n = x He_{n-1} - (n-1) He_{n-2}).
inline Polynomial hermite_he(unsigned n) {
  Polynomial a{Rational(1)}, b = Polynomial::x();
  if (n == 0) return a;
  for (unsigned k = 2; k <= n; ++k) {
    Polynomial c = Polynomial::x() * b - Rational(k - 1) * a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

/// He_n(i x) / i^n, computed by flipping signs: the coefficient of x^k picks up
/// i^(k-n), which is real because only k = n - 2j occur.
inline Polynomial hermite_rotated(unsigned n) {
  Polynomial he = hermite_he(n);
  std::vector<Rational> c(he.coefficients());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const unsigned j = (n - static_cast<unsigned>(k)) / 2;  // i^(k-n) = (-1)^j
    if (j % 2 == 1) c[k] = -c[k];
  }
  return Polynomial(std::move(c));
}

inline bool hermite_check(unsigned n) { return hermite_rotated(n) == pq(n).P; }

/// Value recurrences for P_n(x), Q_n(x) at a point; no polynomial expansion.
inline std::pair<Rational, Rational> pq_values(unsigned n, const Rational& x) {
  Rational p0 = 1, p1 = x, q0 = 0, q1 = 1;
  if (n == 0) return {p0, q0};
  for (unsigned k = 2; k <= n; ++k) {
    Rational p2 = x * p1 + (k - 1) * p0;
    Rational q2 = x * q1 + (k - 1) * q0;
    p0 = std::move(p1);
    p1 = std::move(p2);
    q0 = std::move(q1);
    q1 = std::move(q2);
  }
  return {p1, q1};
}

/// Q_n(x) / P_n(x) exactly.
inline Rational convergent_eval(unsigned n, const Rational& x) {
  if (x < 0) throw std::domain_error("convergents are evaluated for x >= 0");
  auto [p, q] = pq_values(n, x);
  if (sgn(p) == 0) throw std::domain_error("P_n(x) = 0: convergent undefined");
  return q / p;
}

/// 1/(x + 1/(x + 2/(x + ... + (depth-1)/x))) evaluated bottom-up.
inline Rational continued_fraction_eval(unsigned depth, const Rational& x) {
  if (depth == 0) throw std::invalid_argument("continued fraction depth must be positive");
  if (x <= 0) throw std::domain_error("continued fraction is evaluated for x > 0");
  Rational tail = x;
  for (unsigned k = depth - 1; k >= 1; --k) tail = x + Rational(k) / tail;
  return 1 / tail;
}

/// Taylor polynomial T_n of f at 0 with exact symbolic coefficients:
/// sigma / k!! for even k and -1 / k!! for odd k.
inline SymbolicPolynomial taylor_symbolic(unsigned n) {
  std::vector<ConstExpr> c;
  c.reserve(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    Rational inv = make_rational(Integer(1), double_factorial(static_cast<int>(k)));
    c.push_back(k % 2 == 0 ? ConstExpr::sigma_power(1, inv) : ConstExpr(Rational(-inv)));
  }
  return SymbolicPolynomial(std::move(c));
}

/// T_n with sqrt(2 pi) replaced by the given rational.
inline Polynomial taylor_polynomial(unsigned n, const Rational& sqrt_2pi) {
  std::vector<Rational> c;
  c.reserve(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    Rational inv = make_rational(Integer(1), double_factorial(static_cast<int>(k)));
    c.push_back(k % 2 == 0 ? Rational(sqrt_2pi / 2 * inv) : Rational(-inv));
  }
  return Polynomial(std::move(c));
}

/// lower = T_order with the low bracket of sqrt(2 pi), upper = T_{order+1}
/// with the high bracket; lower < f < upper on [0, 1].
struct TaylorEnvelope {
  unsigned order = 0;
  Polynomial lower;
  Polynomial upper;
  int constant_precision = kCoarse;
};

inline TaylorEnvelope taylor_envelope(unsigned order, int constant_precision = kCoarse) {
  if (order % 2 == 0) throw std::invalid_argument("Taylor envelope order must be odd");
  const Enclosure r = constant_enclosure(ConstantId::sqrt_2pi, constant_precision);
  return {order, taylor_polynomial(order, r.lo()), taylor_polynomial(order + 1, r.hi()), constant_precision};
}

/// J_n(x) = sum_{k=1..n} (-1)^(k+1) (2k-3)!! / x^(2k-1).
struct AsymptoticTerm {
  int sign;
  Integer coefficient;
  unsigned power;  ///< of 1/x
};

struct AsymptoticTruncation {
  unsigned n = 0;
  std::vector<AsymptoticTerm> terms;
};

inline AsymptoticTruncation jn(unsigned n) {
  if (n == 0) throw std::invalid_argument("J_n needs n >= 1");
  AsymptoticTruncation j{n, {}};
  for (unsigned k = 1; k <= n; ++k)
    j.terms.push_back({k % 2 == 1 ? 1 : -1, double_factorial(static_cast<int>(2 * k) - 3), 2 * k - 1});
  return j;
}

inline Rational jn_eval(unsigned n, const Rational& x) {
  if (sgn(x) == 0) throw std::domain_error("J_n is undefined at x = 0");
  Rational y = 1 / x, y2 = y * y, power = y, sum = 0;
  for (const auto& t : jn(n).terms) {
    sum += t.sign * Rational(t.coefficient) * power;
    power *= y2;
  }
  return sum;
}

/// Power series a / b in y up to (and including) y^terms-1.
inline std::vector<Rational> series_divide(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                           std::size_t terms) {
  if (b.empty() || sgn(b[0]) == 0) throw std::domain_error("series division needs b(0) != 0");
  std::vector<Rational> q(terms, Rational(0));
  for (std::size_t k = 0; k < terms; ++k) {
    Rational s = k < a.size() ? a[k] : Rational(0);
    for (std::size_t i = 1; i <= k && i < b.size(); ++i) s -= b[i] * q[k - i];
    q[k] = s / b[0];
  }
  return q;
}

/// Expansion of Q_n/P_n in y = 1/x, coefficients of y^0 .. y^(terms-1).
inline std::vector<Rational> convergent_laurent(unsigned n, std::size_t terms) {
  const auto& pair = pq(n);
  // Q_n(x) = x^(n-1) Qr(y), P_n(x) = x^n Pr(y): Q_n/P_n = y Qr(y)/Pr(y).
  std::vector<Rational> pr(pair.P.coefficients().rbegin(), pair.P.coefficients().rend());
  std::vector<Rational> qr(pair.Q.coefficients().rbegin(), pair.Q.coefficients().rend());
  std::vector<Rational> s = series_divide(qr, pr, terms > 0 ? terms - 1 : 0);
  s.insert(s.begin(), Rational(0));
  s.resize(terms);
  return s;
}

/// Coefficient of y^k in the asymptotic expansion of f: y - y^3 + 3y^5 - 15y^7 ...
inline Rational asymptotic_coefficient(std::size_t k) {
  if (k % 2 == 0) return 0;
  const std::size_t j = (k - 1) / 2;
  Rational c(double_factorial(static_cast<int>(2 * j) - 1));
  return j % 2 == 0 ? c : Rational(-c);
}

/// Number of leading asymptotic terms (1, -1, 3, -15, ...) reproduced by the
/// expansion of Q_n/P_n at infinity, the zero even coefficients included.
inline unsigned laurent_match_order(unsigned n) {
  if (n == 0) throw std::invalid_argument("laurent_match_order needs n >= 1");
  const std::size_t terms = 2 * static_cast<std::size_t>(n) + 4;
  const auto s = convergent_laurent(n, terms);
  unsigned matched = 0;
  for (std::size_t k = 0; k < terms; ++k) {
    if (s[k] != asymptotic_coefficient(k)) break;
    if (k % 2 == 1) ++matched;
  }
  return matched;
}

}  // namespace mills
