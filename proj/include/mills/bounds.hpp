#pragma once

// Catalog of closed-form bounds of the Mills ratio with evaluation,
// coincidence orders, gap measurement and crossing witnesses.

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mills/const_expr.hpp"
#include "mills/constants.hpp"
#include "mills/enclosure.hpp"
#include "mills/mills_core.hpp"
#include "mills/oracle.hpp"
#include "mills/polynomial.hpp"
#include "mills/sturm.hpp"

namespace mills {

enum class BoundFamily {
  sqrt_family,         ///< a / (sqrt(alpha x^2 + b) + c x)
  eta,                 ///< sqrt family with a coincidence (1, 1)
  chi,                 ///< sqrt family with a coincidence (0, 2)
  pade_origin,         ///< N(x) / D(x), Pade at 0
  simple_rational,     ///< a / (b + c x)
  quadratic_rational,  ///< (a + b x) / (c + d x + e x^2)
  exponential,         ///< (1 - e^(-a x)) / (b x)
  chernoff             ///< a e^(-b x^2)
};
enum class Side { lower, upper, neither };
/// Which function the entry bounds: f itself or the Gaussian tail Q.
enum class BoundTarget { mills, q_function };

inline std::string to_string(BoundFamily f) {
  switch (f) {
    case BoundFamily::sqrt_family: return "SQRT";
    case BoundFamily::eta: return "ETA";
    case BoundFamily::chi: return "CHI";
    case BoundFamily::pade_origin: return "PADE_ORIGIN";
    case BoundFamily::simple_rational: return "SIMPLE_RATIONAL";
    case BoundFamily::quadratic_rational: return "QUADRATIC_RATIONAL";
    case BoundFamily::exponential: return "EXPONENTIAL";
    case BoundFamily::chernoff: return "CHERNOFF";
  }
  return "?";
}

inline std::string to_string(Side s) {
  switch (s) {
    case Side::lower: return "LOWER";
    case Side::upper: return "UPPER";
    case Side::neither: return "NEITHER";
  }
  return "?";
}

struct Coincidence {
  int i = 0;  ///< derivatives 0..i-1 agree with f at 0
  int j = 0;  ///< order of agreement at infinity
};

struct BoundSpec {
  std::string id;
  std::vector<std::string> aliases;
  BoundFamily family = BoundFamily::sqrt_family;
  std::string formula;
  Side side = Side::lower;
  bool positive_domain = false;  ///< domain x > 0 (with a limit value at 0) instead of x >= 0
  std::optional<Coincidence> coincidence;
  BoundTarget target = BoundTarget::mills;

  // sqrt families
  ConstExpr a, alpha, b, c;
  // rational families
  SymbolicPolynomial num, den;
  // exponential: (1 - e^(-ka x)) / (kb x), ka multiplied by sqrt(ka_root);
  // chernoff: ka e^(-kb x^2)
  ConstExpr ka, kb;
  Rational ka_root = 1;

  bool is_sqrt_family() const {
    return family == BoundFamily::sqrt_family || family == BoundFamily::eta || family == BoundFamily::chi;
  }
  bool is_rational_family() const {
    return family == BoundFamily::pade_origin || family == BoundFamily::simple_rational ||
           family == BoundFamily::quadratic_rational;
  }

  /// Named parameters as display strings.
  std::vector<std::pair<std::string, std::string>> params() const {
    if (is_sqrt_family())
      return {{"a", a.to_string()}, {"alpha", alpha.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}};
    if (is_rational_family()) {
      std::vector<std::pair<std::string, std::string>> out;
      for (std::size_t k = 0; k < num.size(); ++k) out.emplace_back("n" + std::to_string(k), num[k].to_string());
      for (std::size_t k = 0; k < den.size(); ++k) out.emplace_back("d" + std::to_string(k), den[k].to_string());
      return out;
    }
    std::string a_text = ka.to_string();
    if (ka_root != 1) a_text = "(" + a_text + ")*sqrt(" + ka_root.get_str() + ")";
    return {{"a", a_text}, {"b", kb.to_string()}};
  }
};

namespace detail {

inline std::string normalize_id(const std::string& id) {
  std::string out;
  for (char ch : id) {
    if (ch == '{' || ch == '}' || ch == ',' || ch == '_' || ch == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

inline SymbolicPolynomial sym(std::initializer_list<ConstExpr> c) { return SymbolicPolynomial(c); }

inline BoundSpec psi_entry(std::string id, BoundFamily family, std::string formula, Side side, ConstExpr a,
                           ConstExpr alpha, ConstExpr b, ConstExpr c, std::optional<Coincidence> co,
                           std::vector<std::string> aliases = {}) {
  BoundSpec s;
  s.id = std::move(id);
  s.aliases = std::move(aliases);
  s.family = family;
  s.formula = std::move(formula);
  s.side = side;
  s.coincidence = co;
  s.a = std::move(a);
  s.alpha = std::move(alpha);
  s.b = std::move(b);
  s.c = std::move(c);
  return s;
}

inline BoundSpec rational_entry(std::string id, BoundFamily family, std::string formula, Side side,
                                SymbolicPolynomial num, SymbolicPolynomial den, std::optional<Coincidence> co,
                                std::vector<std::string> aliases = {}) {
  BoundSpec s;
  s.id = std::move(id);
  s.aliases = std::move(aliases);
  s.family = family;
  s.formula = std::move(formula);
  s.side = side;
  s.coincidence = co;
  s.num = std::move(num);
  s.den = std::move(den);
  return s;
}

inline BoundSpec exp_entry(std::string id, BoundFamily family, std::string formula, Side side, ConstExpr ka,
                           ConstExpr kb, std::optional<Coincidence> co, BoundTarget target = BoundTarget::mills,
                           std::vector<std::string> aliases = {}) {
  BoundSpec s;
  s.id = std::move(id);
  s.aliases = std::move(aliases);
  s.family = family;
  s.formula = std::move(formula);
  s.side = side;
  s.coincidence = co;
  s.ka = std::move(ka);
  s.kb = std::move(kb);
  s.target = target;
  s.positive_domain = family == BoundFamily::exponential;
  return s;
}

inline std::vector<BoundSpec> build_catalog() {
  const ConstExpr pi = ConstExpr::pi(), s = ConstExpr::sigma();
  const ConstExpr r2pi = ConstExpr::sqrt_2pi();
  std::vector<BoundSpec> c;
  using F = BoundFamily;
  c.push_back(psi_entry("W_{3,0}", F::sqrt_family, "pi/(sqrt(2(4-pi)x^2+2pi)+2x)", Side::lower, pi,
                        ConstExpr(8) - 2 * pi, 2 * pi, 2, Coincidence{3, 0}));
  c.push_back(psi_entry("W_{1,2}", F::chi, "pi/(sqrt(x^2+2pi)+(pi-1)x)", Side::lower, pi, 1, 2 * pi, pi - 1,
                        Coincidence{1, 2}));
  c.push_back(psi_entry("W_{2,1}", F::eta, "pi/(sqrt((pi-2)^2x^2+2pi)+2x)", Side::upper, pi,
                        (pi - 2) * (pi - 2), 2 * pi, 2, Coincidence{2, 1}));
  c.push_back(psi_entry("W_{0,3}", F::chi, "4/(sqrt(x^2+8)+3x)", Side::upper, 4, 1, 8, 3, Coincidence{0, 3}));
  c.push_back(psi_entry("BIRNBAUM", F::chi, "2/(sqrt(x^2+4)+x)", Side::lower, 2, 1, 4, 1, Coincidence{0, 2}));
  c.push_back(psi_entry("ETA_2", F::eta, "2/(sqrt(x^2+8/pi)+x)", Side::upper, 2, 1, ConstExpr::sigma_power(-2, 4),
                        1, Coincidence{1, 1}, {"POLLAK"}));
  c.push_back(psi_entry("CHI_2", F::chi, "3/(sqrt(x^2+6)+2x)", Side::lower, 3, 1, 6, 2, Coincidence{0, 2}));
  c.push_back(psi_entry("LOCAL2_lower", F::sqrt_family, "200/(sqrt(1521x^2+25600)+161x)", Side::lower, 200, 1521,
                        25600, 161, std::nullopt));
  c.push_back(psi_entry("LOCAL2_upper", F::sqrt_family, "192/(sqrt(4225x^2+20736)+127x)", Side::upper, 192, 4225,
                        20736, 127, std::nullopt));

  c.push_back(rational_entry("p_{0,1}", F::pade_origin, "pi/(sqrt(2pi)+2x)", Side::upper, sym({pi}),
                             sym({r2pi, 2}), Coincidence{2, 0}));
  c.push_back(rational_entry("p_{1,2}", F::pade_origin,
                             "(6pi sqrt(2pi)-24sqrt(2pi)+(48-16pi)x)/(12pi-48-4sqrt(2pi)x+2(8-3pi)x^2)",
                             Side::lower, sym({6 * pi * r2pi - 24 * r2pi, ConstExpr(48) - 16 * pi}),
                             sym({12 * pi - 48, -4 * r2pi, 2 * (ConstExpr(8) - 3 * pi)}), Coincidence{4, 0}));
  c.push_back(rational_entry("U_{1,1}", F::simple_rational, "pi/(sqrt(2pi)+pi x)", Side::lower, sym({pi}),
                             sym({r2pi, pi}), Coincidence{1, 1}));
  c.push_back(rational_entry("U_{2,0}", F::simple_rational, "pi/(sqrt(2pi)+2x)", Side::upper, sym({pi}),
                             sym({r2pi, 2}), Coincidence{2, 0}));
  c.push_back(rational_entry("U_rational_lower", F::simple_rational, "105/(91+110x)", Side::lower, sym({105}),
                             sym({91, 110}), std::nullopt));
  c.push_back(rational_entry("U_rational_upper", F::simple_rational, "44/(35+28x)", Side::upper, sym({44}),
                             sym({35, 28}), std::nullopt));
  c.push_back(rational_entry("V_{2,2}", F::quadratic_rational, "(sqrt(2pi)+(pi-2)x)/(2+sqrt(2pi)x+(pi-2)x^2)",
                             Side::lower, sym({r2pi, pi - 2}), sym({2, r2pi, pi - 2}), Coincidence{2, 2}));
  c.push_back(rational_entry("V_{1,3}", F::quadratic_rational, "(sqrt(2pi)+2x)/(2+sqrt(2pi)x+2x^2)", Side::upper,
                             sym({r2pi, 2}), sym({2, r2pi, 2}), Coincidence{1, 3}));
  c.push_back(rational_entry("V_{3,1}", F::quadratic_rational,
                             "(sqrt(2pi)(pi-2)+(4-pi)x)/(2(pi-2)+sqrt(2pi)x+(4-pi)x^2)", Side::upper,
                             sym({r2pi * (pi - 2), ConstExpr(4) - pi}), sym({2 * (pi - 2), r2pi, ConstExpr(4) - pi}),
                             Coincidence{3, 1}));
  c.push_back(rational_entry("V_rational_lower", F::quadratic_rational, "(35+15x)/(28+37x+16x^2)", Side::lower,
                             sym({35, 15}), sym({28, 37, 16}), std::nullopt));
  c.push_back(rational_entry("V_rational_upper", F::quadratic_rational, "(2/5)(13+10x)/(4+5x+4x^2)", Side::upper,
                             sym({make_rational(26, 5), 4}), sym({4, 5, 4}), std::nullopt));

  c.push_back(exp_entry("Z_{2,0}", F::exponential, "(1-exp(-4x/sqrt(2pi)))/(4x/pi)", Side::lower,
                        ConstExpr::sigma_power(-1, 2), ConstExpr::sigma_power(-2, 2), Coincidence{2, 0}));
  c.push_back(exp_entry("Z_{1,1}", F::exponential, "(1-exp(-sqrt(2pi)x/2))/x", Side::upper, s, 1,
                        Coincidence{1, 1}));
  {
    BoundSpec k = exp_entry("KAPPA_KL", F::exponential, "(1-exp(-(1.98/sqrt(2))x))/(1.135x)", Side::neither,
                            make_rational(99, 50), make_rational(227, 200), std::nullopt);
    k.ka_root = make_rational(1, 2);
    c.push_back(k);
  }
  c.push_back(exp_entry("CHERNOFF_lower", F::chernoff, "exp(-3x^2/5)", Side::lower, 1, make_rational(3, 5),
                        std::nullopt));
  c.push_back(exp_entry("CHERNOFF_upper", F::chernoff, "sqrt(pi/2)", Side::upper, s, 0, std::nullopt));
  c.push_back(exp_entry("Q_CHERNOFF_lower", F::chernoff, "exp(-11x^2/10)/sqrt(2pi)", Side::lower,
                        ConstExpr::sigma_power(-1, make_rational(1, 2)), make_rational(11, 10), std::nullopt,
                        BoundTarget::q_function));
  c.push_back(exp_entry("Q_CHERNOFF_upper", F::chernoff, "exp(-x^2/2)/2", Side::upper, make_rational(1, 2),
                        make_rational(1, 2), std::nullopt, BoundTarget::q_function));
  return c;
}

}  // namespace detail

inline const std::vector<BoundSpec>& catalog() {
  static const std::vector<BoundSpec> entries = detail::build_catalog();
  return entries;
}

/// Lookup ignoring case, braces, commas and underscores ("W_{2,1}" == "w21").
inline const BoundSpec* find_bound(const std::string& id) {
  const std::string key = detail::normalize_id(id);
  for (const auto& s : catalog()) {
    if (detail::normalize_id(s.id) == key) return &s;
    for (const auto& alias : s.aliases)
      if (detail::normalize_id(alias) == key) return &s;
  }
  return nullptr;
}

inline const BoundSpec& lookup_bound(const std::string& id) {
  const BoundSpec* s = find_bound(id);
  if (!s) throw std::invalid_argument("unknown bound id: " + id);
  return *s;
}

namespace detail {

inline Enclosure enclose_ka(const BoundSpec& s, const ConstantBrackets& k, int precision) {
  Enclosure a = s.ka.enclose(k);
  if (s.ka_root != 1) a *= sqrt_enclosure(s.ka_root, precision + 2);
  return a;
}

/// (1 - e^-t) / t for an enclosed t >= 0. Near 0 the alternating series
/// sum (-t)^k/(k+1)! envelopes the value; otherwise evaluate directly.
inline Enclosure one_minus_exp_over(const Enclosure& t, int precision) {
  if (t.hi() <= 1) {
    const Rational tol = pow10(-(precision + 2));
    Enclosure sum(1), term(1);
    for (unsigned k = 1;; ++k) {
      term = term * (-t) / Enclosure(static_cast<int>(k + 1));
      Enclosure next = sum + term;
      const Rational mag = std::max(abs(term.lo()), abs(term.hi()));
      if (mag <= tol) return sum.hull(next);
      sum = next;
    }
  }
  return (Enclosure(1) - exp_enclosure(-t, precision + 2)) / t;
}

}  // namespace detail

/// Enclosure of the bound's value at x; exact when the formula is rational.
inline Enclosure eval_bound(const BoundSpec& s, const Rational& x, int precision = 30) {
  if (x < 0) throw std::domain_error("bounds are evaluated for x >= 0");
  const ConstantBrackets k = ConstantBrackets::at_precision(precision);
  const Enclosure X(x);
  if (s.is_sqrt_family()) {
    Enclosure radicand = s.alpha.enclose(k) * X * X + s.b.enclose(k);
    Enclosure root = sqrt_enclosure(radicand, precision + 2);
    return s.a.enclose(k) / (root + s.c.enclose(k) * X);
  }
  if (s.is_rational_family()) {
    Enclosure n(0), d(0);
    for (auto it = s.num.coefficients().rbegin(); it != s.num.coefficients().rend(); ++it)
      n = n * X + (it->is_rational() ? Enclosure(it->rational_value()) : it->enclose(k));
    for (auto it = s.den.coefficients().rbegin(); it != s.den.coefficients().rend(); ++it)
      d = d * X + (it->is_rational() ? Enclosure(it->rational_value()) : it->enclose(k));
    return n / d;
  }
  if (s.family == BoundFamily::exponential) {
    Enclosure a = detail::enclose_ka(s, k, precision);
    Enclosure b = s.kb.enclose(k);
    return a / b * detail::one_minus_exp_over(a * X, precision);
  }
  // chernoff
  Enclosure arg = -(s.kb.enclose(k) * X * X);
  return detail::enclose_ka(s, k, precision) * exp_enclosure(arg, precision + 2);
}

inline Enclosure eval_bound(const std::string& id, const Rational& x, int precision = 30) {
  return eval_bound(lookup_bound(id), x, precision);
}

/// The function the entry bounds (f or Q) at x.
inline Enclosure target_enclosure(const BoundSpec& s, const Rational& x, const Rational& width) {
  return s.target == BoundTarget::mills ? mills_enclosure(x, width) : q_function(x, width);
}

/// Certified side test at x: true when the bound is strictly on its side of
/// the target, false when strictly on the other side, nullopt when the
/// enclosures still overlap at the finest width tried.
inline std::optional<bool> side_holds(const BoundSpec& s, const Rational& x, const Rational& width = pow10(-9)) {
  Rational w = width;
  int precision = std::max(20, digits_for_width(width) + 4);
  for (int round = 0; round < 6; ++round) {
    Enclosure b = eval_bound(s, x, precision);
    Enclosure f = target_enclosure(s, x, w);
    const bool below = b.below(f), above = f.below(b);
    if (below || above) return s.side == Side::lower ? below : above;
    // tiny Q-function values need a width relative to their size
    Rational scale = abs(f.lo());
    w = (scale > 0 && scale < 1) ? Rational(w * scale / 16) : Rational(w / 1000000);
    precision = digits_for_width(w) + 4;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Coincidence orders

namespace detail {

using Series = std::vector<Enclosure>;

inline Series series_mul(const Series& a, const Series& b, std::size_t n) {
  Series r(n, Enclosure(0));
  for (std::size_t i = 0; i < n && i < a.size(); ++i)
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Series series_div(const Series& a, const Series& b, std::size_t n) {
  Series q(n, Enclosure(0));
  for (std::size_t k = 0; k < n; ++k) {
    Enclosure s = k < a.size() ? a[k] : Enclosure(0);
    for (std::size_t i = 1; i <= k && i < b.size(); ++i) s -= b[i] * q[k - i];
    q[k] = s / b[0];
  }
  return q;
}

inline Series series_sqrt(const Series& a, std::size_t n, int precision) {
  Series s(n, Enclosure(0));
  s[0] = sqrt_enclosure(a[0], precision);
  for (std::size_t k = 1; k < n; ++k) {
    Enclosure t = k < a.size() ? a[k] : Enclosure(0);
    for (std::size_t i = 1; i < k; ++i) t -= s[i] * s[k - i];
    s[k] = t / (Enclosure(2) * s[0]);
  }
  return s;
}

inline Series constant_series(const SymbolicPolynomial& p, const ConstantBrackets& k) {
  Series out;
  for (const auto& c : p.coefficients()) out.push_back(c.enclose(k));
  return out;
}

/// Taylor coefficients of the bound at 0.
inline Series series_at_zero(const BoundSpec& s, std::size_t n, int precision) {
  const ConstantBrackets k = ConstantBrackets::at_precision(precision);
  if (s.is_sqrt_family()) {
    Series root = series_sqrt({s.b.enclose(k), Enclosure(0), s.alpha.enclose(k)}, n, precision);
    if (n > 1) root[1] += s.c.enclose(k);
    return series_div({s.a.enclose(k)}, root, n);
  }
  if (s.is_rational_family()) return series_div(constant_series(s.num, k), constant_series(s.den, k), n);
  Series out(n, Enclosure(0));
  const Enclosure a = enclose_ka(s, k, precision);
  if (s.family == BoundFamily::exponential) {
    // (a/b) sum (-a x)^m / (m+1)!
    const Enclosure scale = a / s.kb.enclose(k);
    Enclosure term(1);
    for (std::size_t m = 0; m < n; ++m) {
      out[m] = scale * term / Enclosure(Rational(factorial(static_cast<unsigned>(m + 1))));
      term = term * (-a);
    }
    return out;
  }
  // chernoff: a sum (-b x^2)^m / m!
  const Enclosure b = s.kb.enclose(k);
  Enclosure term(1);
  for (std::size_t m = 0; 2 * m < n; ++m) {
    out[2 * m] = a * term / Enclosure(Rational(factorial(static_cast<unsigned>(m))));
    term = term * (-b);
  }
  return out;
}

/// Coefficients in y = 1/x of the expansion at infinity (exponentially small
/// parts dropped).
inline Series series_at_infinity(const BoundSpec& s, std::size_t n, int precision) {
  const ConstantBrackets k = ConstantBrackets::at_precision(precision);
  Series out(n, Enclosure(0));
  if (s.is_sqrt_family()) {
    // a y / (sqrt(alpha + b y^2) + c)
    Series root = series_sqrt({s.alpha.enclose(k), Enclosure(0), s.b.enclose(k)}, n, precision);
    root[0] += s.c.enclose(k);
    Series q = series_div({s.a.enclose(k)}, root, n);
    for (std::size_t i = 0; i + 1 < n; ++i) out[i + 1] = q[i];
    return out;
  }
  if (s.is_rational_family()) {
    Series nr = constant_series(s.num, k), dr = constant_series(s.den, k);
    std::reverse(nr.begin(), nr.end());
    std::reverse(dr.begin(), dr.end());
    const int shift = s.den.degree() - s.num.degree();
    if (shift < 0) throw std::domain_error("bound grows at infinity");
    Series q = series_div(nr, dr, n);
    for (std::size_t i = 0; i + static_cast<std::size_t>(shift) < n; ++i) out[i + static_cast<std::size_t>(shift)] = q[i];
    return out;
  }
  if (s.family == BoundFamily::exponential && n > 1) out[1] = Enclosure(1) / s.kb.enclose(k);
  return out;
}

inline Enclosure mills_taylor_coefficient(std::size_t m, const ConstantBrackets& k) {
  Rational inv = make_rational(Integer(1), double_factorial(static_cast<int>(m)));
  if (m % 2 == 0) return k.sigma * Enclosure(inv);
  return Enclosure(Rational(-inv));
}

}  // namespace detail

struct CoincidenceReport {
  std::string id;
  std::optional<Coincidence> declared;
  int measured_i = 0;
  int measured_j = 0;
  bool verified_i = false;
  bool verified_j = false;
  bool verified() const { return verified_i && verified_j; }
};

/// Measures how many Taylor coefficients at 0 and how many asymptotic terms at
/// infinity agree with f (enclosure overlap at `precision` digits; a disjoint
/// pair is a certified mismatch) and compares with the declared orders.
inline CoincidenceReport coincidence_check(const BoundSpec& s, int precision = 40) {
  CoincidenceReport r{s.id, s.coincidence};
  if (s.target != BoundTarget::mills) throw std::invalid_argument(s.id + " does not bound the Mills ratio");
  const std::size_t n = 10;
  const ConstantBrackets k = ConstantBrackets::at_precision(precision);
  const auto zero = detail::series_at_zero(s, n, precision);
  while (r.measured_i < static_cast<int>(n) &&
         zero[static_cast<std::size_t>(r.measured_i)].intersects(
             detail::mills_taylor_coefficient(static_cast<std::size_t>(r.measured_i), k)))
    ++r.measured_i;
  const auto inf = detail::series_at_infinity(s, n, precision);
  int first_mismatch = 0;
  while (first_mismatch < static_cast<int>(n) &&
         inf[static_cast<std::size_t>(first_mismatch)].intersects(
             Enclosure(asymptotic_coefficient(static_cast<std::size_t>(first_mismatch)))))
    ++first_mismatch;
  const int m = std::max(0, first_mismatch - 1);  // matched terms y^1 .. y^m
  r.measured_j = s.is_sqrt_family() ? (m + 1) / 2 : m;
  if (first_mismatch == 0) r.measured_j = 0;
  if (s.coincidence) {
    r.verified_i = r.measured_i >= s.coincidence->i;
    r.verified_j = r.measured_j >= s.coincidence->j;
  }
  return r;
}

inline CoincidenceReport coincidence_check(const std::string& id, int precision = 40) {
  const BoundSpec& s = lookup_bound(id);
  if (!s.coincidence) throw std::invalid_argument(s.id + " has no declared coincidence order");
  return coincidence_check(s, precision);
}

// ---------------------------------------------------------------------------
// Gaps

struct GapReport {
  std::string upper_id;
  std::string lower_id;
  Rational sup_gap;  ///< upper estimate of the gap at the located maximiser
  std::size_t grid = 0;
  Rational refine_tol;
  RootInterval argmax_interval;
  Rational argmax;
  bool certified = false;
};

namespace detail {

inline Rational grid_point(std::size_t i, std::size_t grid) {
  // x = t/(1-t), t uniform on [0, 20/21], so x covers [0, 20].
  Rational t = make_rational(20, 21) * Rational(static_cast<long>(i)) / Rational(static_cast<long>(grid - 1));
  return t / (1 - t);
}

inline Rational gap_at(const BoundSpec& u, const BoundSpec& l, const Rational& x, int precision) {
  return eval_bound(u, x, precision).hi() - eval_bound(l, x, precision).lo();
}

}  // namespace detail

/// Sup of upper - lower over a mapped grid of [0, 20] with golden-section
/// refinement around the grid maximiser. A measurement, not a proof.
inline GapReport gap(const BoundSpec& upper, const BoundSpec& lower, std::size_t grid = 4096,
                     const Rational& refine_tol = make_rational(1, 1000000), int precision = 12) {
  if (grid < 3) throw std::invalid_argument("gap grid needs at least 3 points");
  std::vector<Rational> xs(grid);
  std::vector<Rational> values(grid);
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid; ++i) {
    xs[i] = detail::grid_point(i, grid);
    values[i] = detail::gap_at(upper, lower, xs[i], precision);
    if (values[i] > values[best]) best = i;
  }
  Rational a = xs[best == 0 ? 0 : best - 1], b = xs[std::min(best + 1, grid - 1)];
  Rational x_best = xs[best], v_best = values[best];
  // golden-section search for the maximum on [a, b]
  const Rational ratio = make_rational(618034, 1000000);
  Rational c = b - ratio * (b - a), d = a + ratio * (b - a);
  Rational fc = detail::gap_at(upper, lower, c, precision), fd = detail::gap_at(upper, lower, d, precision);
  for (int it = 0; it < 200 && b - a > refine_tol; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      c = round_down(c, pow10_integer(12));
      fc = detail::gap_at(upper, lower, c, precision);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      d = round_up(d, pow10_integer(12));
      fd = detail::gap_at(upper, lower, d, precision);
    }
    if (fc > v_best) {
      v_best = fc;
      x_best = c;
    }
    if (fd > v_best) {
      v_best = fd;
      x_best = d;
    }
  }
  GapReport r;
  r.upper_id = upper.id;
  r.lower_id = lower.id;
  r.sup_gap = v_best;
  r.grid = grid;
  r.refine_tol = refine_tol;
  r.argmax_interval = {std::min(a, x_best), std::max(b, x_best)};
  r.argmax = x_best;
  return r;
}

inline GapReport gap(const std::string& upper_id, const std::string& lower_id, std::size_t grid = 4096,
                     const Rational& refine_tol = make_rational(1, 1000000)) {
  return gap(lookup_bound(upper_id), lookup_bound(lower_id), grid, refine_tol);
}

/// True for entries that are decreasing on [0, inf) by their form alone.
inline bool manifestly_decreasing(const BoundSpec& s) {
  const ConstantBrackets k = ConstantBrackets::at_precision(20);
  auto nonneg = [&](const ConstExpr& e) { return e.enclose(k).lo() >= 0; };
  if (s.is_sqrt_family()) return s.a.enclose(k).positive() && nonneg(s.alpha) && nonneg(s.b) && nonneg(s.c);
  if (s.is_rational_family()) {
    if (s.num.degree() != 0 || !s.num[0].enclose(k).positive()) return false;
    for (const auto& c : s.den.coefficients())
      if (!nonneg(c)) return false;
    return true;
  }
  return s.family == BoundFamily::exponential && s.target == BoundTarget::mills;
}

struct GapCertificate {
  bool proved = false;
  Rational constant;
  std::size_t cells = 0;
  Rational tail_start;  ///< beyond this point upper(x) alone is below the constant
  Rational worst_cell_bound;
  std::string reason;
};

/// Proves sup_{x >= 0} (upper - lower) < constant for two decreasing bounds:
/// on a cell [a, b] the gap is at most upper(a) - lower(b); beyond X it is at
/// most upper(X) because lower > 0.
inline GapCertificate certify_sup_gap(const BoundSpec& upper, const BoundSpec& lower, const Rational& constant,
                                      int precision = 20) {
  GapCertificate cert;
  cert.constant = constant;
  if (!manifestly_decreasing(upper) || !manifestly_decreasing(lower)) {
    cert.reason = "cell argument needs two manifestly decreasing bounds";
    return cert;
  }
  Rational X = 1;
  while (eval_bound(upper, X, precision).hi() >= constant) {
    X *= 2;
    if (X > 1000000) {
      cert.reason = "upper bound does not fall below the constant";
      return cert;
    }
  }
  cert.tail_start = X;
  struct Cell {
    Rational a, b;
    int depth;
  };
  std::vector<Cell> stack;
  const int initial = 64;
  for (int i = initial - 1; i >= 0; --i) stack.push_back({X * i / initial, X * (i + 1) / initial, 0});
  cert.worst_cell_bound = 0;
  while (!stack.empty()) {
    Cell cell = stack.back();
    stack.pop_back();
    Rational bound = eval_bound(upper, cell.a, precision).hi() - eval_bound(lower, cell.b, precision).lo();
    if (bound < constant) {
      ++cert.cells;
      if (bound > cert.worst_cell_bound) cert.worst_cell_bound = bound;
      continue;
    }
    if (cell.depth >= 24) {
      cert.reason = "cell refinement limit reached near x = " + to_decimal(cell.a, 6);
      return cert;
    }
    Rational mid = (cell.a + cell.b) / 2;
    stack.push_back({mid, cell.b, cell.depth + 1});
    stack.push_back({cell.a, mid, cell.depth + 1});
  }
  cert.proved = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Crossing witnesses for entries that are neither lower nor upper bounds

struct CrossingReport {
  bool found = false;
  Rational x_above;  ///< f(x_above) < bound(x_above), certified
  Rational x_below;  ///< f(x_below) > bound(x_below), certified
  Enclosure f_above, bound_above, f_below, bound_below;
};

/// Scans [0, 10] for two points where the bound is certifiably above and
/// below f. found = false means the scan was inconclusive.
inline CrossingReport crossing_exhibit(const BoundSpec& s, int precision = 30) {
  CrossingReport r;
  bool have_above = false, have_below = false;
  const Rational width = pow10(-12);
  for (int i = 1; i <= 400 && !(have_above && have_below); ++i) {
    Rational x = make_rational(i, 40);
    Enclosure b = eval_bound(s, x, precision);
    Enclosure f = target_enclosure(s, x, width);
    if (!have_above && f.below(b)) {
      have_above = true;
      r.x_above = x;
      r.f_above = f;
      r.bound_above = b;
    }
    if (!have_below && b.below(f)) {
      have_below = true;
      r.x_below = x;
      r.f_below = f;
      r.bound_below = b;
    }
  }
  r.found = have_above && have_below;
  return r;
}

inline CrossingReport crossing_exhibit(const std::string& id, int precision = 30) {
  const BoundSpec& s = lookup_bound(id);
  if (s.side != Side::neither) throw std::invalid_argument(s.id + " is not a NEITHER entry");
  return crossing_exhibit(s, precision);
}

}  // namespace mills
