#pragma once

// Positivity certificates for polynomial inequalities in x, f(x) and an
// optional exponential e^(-lambda x^p): f is replaced by a lower envelope in
// positive terms and by an upper envelope in negative terms, constants are
// bracketed, and the resulting rational polynomial is checked with Sturm
// sequences on each piece of the interval.

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mills/bounds.hpp"
#include "mills/const_expr.hpp"
#include "mills/constants.hpp"
#include "mills/mills_core.hpp"
#include "mills/polynomial.hpp"
#include "mills/sturm.hpp"

namespace mills {

/// coefficient * x^x_power * f^f_power * e^e_power
struct MillsTerm {
  ConstExpr coefficient;
  unsigned x_power = 0;
  unsigned f_power = 0;
  unsigned e_power = 0;
};

/// e = exp(-lambda x^power)
struct ExpSpec {
  ConstExpr lambda;
  unsigned power = 1;
};

struct MillsExpression {
  std::vector<MillsTerm> terms;
  std::optional<ExpSpec> exp;

  bool uses_f() const {
    return std::any_of(terms.begin(), terms.end(), [](const MillsTerm& t) { return t.f_power > 0; });
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
      if (!first) os << " + ";
      first = false;
      os << "(" << t.coefficient.to_string() << ")";
      if (t.x_power == 1) os << "*x";
      if (t.x_power > 1) os << "*x^" << t.x_power;
      if (t.f_power == 1) os << "*f";
      if (t.f_power > 1) os << "*f^" << t.f_power;
      if (t.e_power == 1) os << "*e";
      if (t.e_power > 1) os << "*e^" << t.e_power;
    }
    if (first) os << "0";
    if (exp) os << "  [e = exp(-(" << exp->lambda.to_string() << ")*x^" << exp->power << ")]";
    return os.str();
  }
};

enum class Strategy { taylor, convergent };
/// early: constants bracketed before expansion (envelopes and term
/// coefficients separately); late: everything expanded over sigma first and
/// each x-coefficient bracketed at the end, which keeps exact cancellations.
enum class ConstantMode { early, late };
enum class Verdict { proved, failed, indeterminate };

inline std::string to_string(Strategy s) { return s == Strategy::taylor ? "TAYLOR" : "CONVERGENT"; }
inline std::string to_string(ConstantMode m) { return m == ConstantMode::early ? "EARLY" : "LATE"; }
inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::proved: return "PROVED";
    case Verdict::failed: return "FAILED";
    case Verdict::indeterminate: return "INDETERMINATE";
  }
  return "?";
}

struct ConstantChoice {
  enum class Kind { taylor_coarse, sigma_pi_coarse, precision };
  Kind kind = Kind::taylor_coarse;
  int digits = 0;

  static ConstantChoice taylor_coarse() { return {Kind::taylor_coarse, 0}; }
  static ConstantChoice sigma_pi_coarse() { return {Kind::sigma_pi_coarse, 0}; }
  static ConstantChoice at(int digits) { return {Kind::precision, digits}; }

  ConstantBrackets brackets() const {
    switch (kind) {
      case Kind::taylor_coarse: return ConstantBrackets::taylor_coarse();
      case Kind::sigma_pi_coarse: return ConstantBrackets::sigma_pi_coarse();
      case Kind::precision: return ConstantBrackets::at_precision(digits);
    }
    return ConstantBrackets::taylor_coarse();
  }
  ConstantChoice finer() const { return at(kind == Kind::precision ? std::max(10, 2 * digits) : 10); }
  std::string to_string() const {
    switch (kind) {
      case Kind::taylor_coarse: return "coarse sqrt(2pi)";
      case Kind::sigma_pi_coarse: return "coarse sqrt(pi/2), pi";
      case Kind::precision: return std::to_string(digits) + " digits";
    }
    return "?";
  }
};

/// Envelope of e^(-t), t = lambda x^p >= 0: partial sums S_n (lower for odd
/// n, upper for even n), the zero lower bound, or 1/E_n with E_n the
/// truncated series of e^t (upper).
struct ExpEnvelope {
  enum class Kind { partial_sum, zero, reciprocal };
  Kind kind = Kind::zero;
  unsigned order = 0;

  std::string to_string() const {
    switch (kind) {
      case Kind::partial_sum: return "S_" + std::to_string(order);
      case Kind::zero: return "0";
      case Kind::reciprocal: return "1/E_" + std::to_string(order);
    }
    return "?";
  }
};

struct Piece {
  ExtendedRational a = 0;
  ExtendedRational b = ExtendedRational::plus_infinity();
  bool open_left = false;
  Strategy strategy = Strategy::convergent;
  unsigned order = 10;  ///< odd Taylor order, or even convergent index
  ConstantMode mode = ConstantMode::early;
  ConstantChoice constants = ConstantChoice::taylor_coarse();
  ExpEnvelope exp_lower{ExpEnvelope::Kind::zero, 0};
  ExpEnvelope exp_upper{ExpEnvelope::Kind::reciprocal, 6};

  std::string interval() const {
    return std::string(open_left ? "(" : "[") + a.to_string() + ", " + b.to_string() + (b.is_finite() ? "]" : ")");
  }
  std::string envelope() const {
    if (strategy == Strategy::taylor)
      return "T_" + std::to_string(order) + " / T_" + std::to_string(order + 1);
    return "Q_" + std::to_string(order) + "/P_" + std::to_string(order) + " / Q_" + std::to_string(order + 1) +
           "/P_" + std::to_string(order + 1);
  }
};

/// One inequality expression > 0 with its proof partition.
struct Condition {
  std::string label;
  MillsExpression expression;
  std::vector<Piece> pieces;
};

/// A claim holds when every condition is positive on its pieces.
struct Claim {
  std::string id;
  std::string description;
  std::vector<Condition> conditions;
};

// ---------------------------------------------------------------------------
// Envelopes

/// num / den with constant-expression coefficients.
struct RationalEnvelope {
  SymbolicPolynomial num;
  SymbolicPolynomial den{ConstExpr(1)};

  RationalEnvelope() = default;
  RationalEnvelope(SymbolicPolynomial n, SymbolicPolynomial d = SymbolicPolynomial{ConstExpr(1)})  // NOLINT
      : num(std::move(n)), den(std::move(d)) {}
  RationalEnvelope(const Polynomial& n, const Polynomial& d = Polynomial{Rational(1)})  // NOLINT
      : num(to_symbolic(n)), den(to_symbolic(d)) {}

  bool is_zero() const { return num.is_zero(); }
  bool constant_den() const { return den.degree() <= 0; }
};

namespace detail {

/// S_n(lambda x^p) = sum_{k<=n} (-lambda x^p)^k / k!, or E_n with all signs +.
inline SymbolicPolynomial exp_series(const ExpSpec& e, unsigned n, bool alternate) {
  std::vector<ConstExpr> c(static_cast<std::size_t>(n) * e.power + 1, ConstExpr(0));
  ConstExpr term(1);
  for (unsigned k = 0; k <= n; ++k) {
    ConstExpr scaled = term * ConstExpr(make_rational(Integer(1), factorial(k)));
    c[static_cast<std::size_t>(k) * e.power] = (alternate && k % 2 == 1) ? -scaled : scaled;
    term = term * e.lambda;
  }
  return SymbolicPolynomial(std::move(c));
}

inline RationalEnvelope exp_envelope(const ExpSpec& e, const ExpEnvelope& env, bool lower) {
  switch (env.kind) {
    case ExpEnvelope::Kind::zero:
      if (!lower) throw std::invalid_argument("the zero envelope is a lower bound only");
      return RationalEnvelope(SymbolicPolynomial{});
    case ExpEnvelope::Kind::partial_sum:
      if ((env.order % 2 == 1) != lower)
        throw std::invalid_argument("partial sums S_n bound e^-t from below for odd n, from above for even n");
      return RationalEnvelope(exp_series(e, env.order, true));
    case ExpEnvelope::Kind::reciprocal:
      if (lower) throw std::invalid_argument("1/E_n is an upper bound only");
      return RationalEnvelope(SymbolicPolynomial{ConstExpr(1)}, exp_series(e, env.order, false));
  }
  throw std::logic_error("unknown exponential envelope");
}

inline SymbolicPolynomial spow(const SymbolicPolynomial& p, unsigned n) {
  SymbolicPolynomial r{ConstExpr(1)};
  for (unsigned i = 0; i < n; ++i) r = r * p;
  return r;
}

inline SymbolicPolynomial x_power(unsigned k) {
  std::vector<ConstExpr> c(k + 1, ConstExpr(0));
  c[k] = ConstExpr(1);
  return SymbolicPolynomial(std::move(c));
}

inline SymbolicPolynomial rational_symbolic(const Polynomial& p) { return to_symbolic(p); }

inline RationalEnvelope bracket_envelope(const RationalEnvelope& e, const ConstantBrackets& k, bool lower) {
  // x >= 0: bracketing every coefficient moves the polynomial in that direction.
  const int dn = lower ? -1 : 1;
  return RationalEnvelope(bracket_coefficients(e.num, k, dn), bracket_coefficients(e.den, k, -dn));
}

}  // namespace detail

/// A lower envelope that must be nonnegative on the piece for the
/// substitution to be sound.
struct NonnegRequirement {
  std::string what;
  Polynomial polynomial;  ///< bracketed from below
};

struct SandwichResult {
  SymbolicPolynomial symbolic;      ///< numerator before the final bracketing
  Polynomial numerator;             ///< certified lower bound of numerator
  std::vector<std::pair<std::string, Polynomial>> denominators;  ///< positive factors of the common denominator
  std::vector<NonnegRequirement> requirements;
  std::string indeterminate;  ///< non-empty when a coefficient sign could not be settled
  bool content_normalized = false;
};

/// Sandwich substitution of f (and e) into expr. Valid for x >= 0.
inline SandwichResult sandwich(const MillsExpression& expr, const RationalEnvelope& f_lower,
                               const RationalEnvelope& f_upper, const ConstantBrackets& k, ConstantMode mode,
                               const std::optional<RationalEnvelope>& e_lower = std::nullopt,
                               const std::optional<RationalEnvelope>& e_upper = std::nullopt) {
  SandwichResult out;
  RationalEnvelope fl = f_lower, fu = f_upper;
  std::optional<RationalEnvelope> el = e_lower, eu = e_upper;
  if (mode == ConstantMode::early) {
    fl = detail::bracket_envelope(fl, k, true);
    fu = detail::bracket_envelope(fu, k, false);
    if (el) el = detail::bracket_envelope(*el, k, true);
    if (eu) eu = detail::bracket_envelope(*eu, k, false);
  }

  struct Signed {
    const MillsTerm* term;
    int sign;
  };
  std::vector<Signed> signed_terms;
  unsigned jfl = 0, jfu = 0, jel = 0, jeu = 0;
  bool need_fl_nonneg = false, need_el_nonneg = false;
  for (const auto& t : expr.terms) {
    auto s = t.coefficient.sign();
    if (!s) {
      out.indeterminate = "sign of coefficient " + t.coefficient.to_string() + " could not be settled";
      return out;
    }
    if (*s == 0) continue;
    if (t.e_power > 0 && !expr.exp) throw std::invalid_argument("term uses e but the expression has no exponential");
    if (t.e_power > 0 && (!el || !eu)) throw std::invalid_argument("exponential envelopes missing");
    signed_terms.push_back({&t, *s});
    if (*s > 0) {
      jfl = std::max(jfl, t.f_power);
      jel = std::max(jel, t.e_power);
      const bool bracketed_coefficient = mode == ConstantMode::early && !t.coefficient.is_rational();
      if (t.f_power + t.e_power >= 2 || (bracketed_coefficient && t.f_power + t.e_power >= 1)) {
        if (t.f_power > 0) need_fl_nonneg = true;
        if (t.e_power > 0) need_el_nonneg = true;
      }
    } else {
      jfu = std::max(jfu, t.f_power);
      jeu = std::max(jeu, t.e_power);
    }
  }

  const SymbolicPolynomial one{ConstExpr(1)};
  auto den_power = [&](const std::optional<RationalEnvelope>& e, unsigned j) {
    return (e && j > 0) ? detail::spow(e->den, j) : one;
  };
  const SymbolicPolynomial dfl = jfl ? detail::spow(fl.den, jfl) : one;
  const SymbolicPolynomial dfu = jfu ? detail::spow(fu.den, jfu) : one;
  const SymbolicPolynomial del = den_power(el, jel);
  const SymbolicPolynomial deu = den_power(eu, jeu);

  SymbolicPolynomial sum;
  for (const auto& [t, s] : signed_terms) {
    const RationalEnvelope& f = s > 0 ? fl : fu;
    const std::optional<RationalEnvelope>& e = s > 0 ? el : eu;
    const unsigned jf = s > 0 ? jfl : jfu, je = s > 0 ? jel : jeu;
    ConstExpr c = t->coefficient;
    if (mode == ConstantMode::early && !c.is_rational()) c = ConstExpr(c.enclose(k).lo());
    SymbolicPolynomial term = SymbolicPolynomial{c} * detail::x_power(t->x_power);
    term = term * detail::spow(f.num, t->f_power) * detail::spow(f.den, jf - t->f_power);
    if (e) term = term * detail::spow(e->num, t->e_power) * detail::spow(e->den, je - t->e_power);
    term = term * (s > 0 ? dfu * deu : dfl * del);
    sum = sum + term;
  }
  out.symbolic = sum;
  out.numerator = bracket_coefficients(sum, k, -1);

  auto add_den = [&](const std::string& what, const SymbolicPolynomial& d, unsigned j) {
    if (j == 0 || d.degree() <= 0) {
      if (j > 0 && !(d.coefficient(0).enclose(k).positive()))
        throw std::domain_error(what + " denominator is not a positive constant");
      return;
    }
    out.denominators.emplace_back(what, bracket_coefficients(d, k, -1));
  };
  add_den("f lower envelope", fl.den, jfl);
  add_den("f upper envelope", fu.den, jfu);
  if (el) add_den("e lower envelope", el->den, jel);
  if (eu) add_den("e upper envelope", eu->den, jeu);
  if (!out.denominators.empty() && !out.numerator.is_zero()) {
    out.numerator = primitive_part(out.numerator);
    out.content_normalized = true;
  }
  if (need_fl_nonneg && !fl.is_zero()) out.requirements.push_back({"f lower envelope >= 0", bracket_coefficients(fl.num, k, -1)});
  if (need_el_nonneg && el && !el->is_zero())
    out.requirements.push_back({"e lower envelope >= 0", bracket_coefficients(el->num, k, -1)});
  return out;
}

/// The numerator polynomial of the sandwich substitution; throws when a
/// coefficient sign is indeterminate.
inline Polynomial substitute_sandwich(const MillsExpression& expr, const RationalEnvelope& lower,
                                      const RationalEnvelope& upper,
                                      const ConstantBrackets& k = ConstantBrackets::taylor_coarse(),
                                      ConstantMode mode = ConstantMode::early) {
  SandwichResult r = sandwich(expr, lower, upper, k, mode);
  if (!r.indeterminate.empty()) throw std::domain_error(r.indeterminate);
  return r.numerator;
}

// ---------------------------------------------------------------------------
// Positivity

struct PositivityReport {
  Polynomial polynomial;        ///< as tested (after removing x^stripped_power)
  unsigned stripped_power = 0;  ///< factor x^k removed on a piece open at 0
  bool positive = false;
  int roots_in_interval = 0;  ///< -1 when an endpoint is a root
  int sign_at_left = 0;
  int sign_at_right = 0;
  int sturm_length = 0;
  std::vector<RootInterval> real_roots;  ///< all real roots, isolated
  Verdict verdict = Verdict::failed;
  std::string note;
};

/// Decides p > 0 on the interval (a, b] if open_left else [a, b]. On a piece
/// open at 0 the factor x^k is removed first.
inline PositivityReport certify_positive(const Polynomial& p, const ExtendedRational& a, const ExtendedRational& b,
                                         bool open_left = false, bool isolate = true) {
  PositivityReport r;
  r.polynomial = p;
  if (p.is_zero()) {
    r.note = "polynomial vanishes identically";
    return r;
  }
  if (open_left && a.is_finite() && sgn(a.value()) == 0) {
    r.stripped_power = static_cast<unsigned>(p.low_order());
    r.polynomial = p.divided_by_x_power(r.stripped_power);
  }
  const Polynomial& q = r.polynomial;
  r.sign_at_left = sign_at(q, a);
  r.sign_at_right = sign_at(q, b);
  const SturmSequence seq = sturm_sequence(q, SturmMode::primitive);
  r.sturm_length = static_cast<int>(seq.polys.size());
  if (r.sign_at_left == 0 || r.sign_at_right == 0) {
    r.roots_in_interval = -1;
  } else {
    r.roots_in_interval = detail::count_with(seq, a, b);
  }
  r.positive = r.sign_at_left > 0 && r.sign_at_right > 0 && r.roots_in_interval == 0;
  if (isolate && q.degree() >= 1)
    r.real_roots = isolate_roots(q, ExtendedRational::minus_infinity(), ExtendedRational::plus_infinity(),
                                 make_rational(1, 1000));
  if (r.positive) {
    r.verdict = Verdict::proved;
  } else {
    r.verdict = Verdict::failed;
    if (r.sign_at_left <= 0) r.note = "not positive at the left end";
    else if (r.sign_at_right <= 0) r.note = "not positive at the right end";
    else r.note = std::to_string(r.roots_in_interval) + " root(s) inside the interval";
  }
  return r;
}

inline PositivityReport certify_positive(const Polynomial& p, const Piece& piece, bool isolate = true) {
  return certify_positive(p, piece.a, piece.b, piece.open_left, isolate);
}

// ---------------------------------------------------------------------------
// Verification

struct PieceCertificate {
  Piece piece;
  std::string constants;
  Verdict verdict = Verdict::indeterminate;
  std::string note;
  SymbolicPolynomial symbolic;
  bool content_normalized = false;
  PositivityReport numerator;
  std::vector<std::pair<std::string, PositivityReport>> side_checks;  ///< denominators, envelope signs
  unsigned attempt = 0;                                              ///< escalation round that produced it
  std::vector<PieceCertificate> subpieces;                           ///< set when the piece was split
};

struct ConditionCertificate {
  std::string label;
  std::string expression;
  Verdict verdict = Verdict::indeterminate;
  std::vector<PieceCertificate> pieces;
};

struct Certificate {
  std::string claim_id;
  std::string description;
  Verdict verdict = Verdict::indeterminate;
  std::vector<ConditionCertificate> conditions;
  double seconds = 0;
  std::string hint;
};

struct VerifyOptions {
  bool escalate = true;
  int escalation_rounds = 3;
  int max_split_depth = 4;
  bool isolate_roots = true;
};

namespace detail {

inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::indeterminate || b == Verdict::indeterminate) return Verdict::indeterminate;
  if (a == Verdict::failed || b == Verdict::failed) return Verdict::failed;
  return Verdict::proved;
}

inline void check_piece(const Piece& p) {
  if (!p.a.is_finite() || sgn(p.a.value()) < 0) throw std::invalid_argument("pieces must lie in [0, inf)");
  if (!(p.a < p.b)) throw std::invalid_argument("piece needs a < b");
  if (p.strategy == Strategy::taylor) {
    if (!p.b.is_finite()) throw std::invalid_argument("Taylor envelopes need a bounded piece");
    if (p.order % 2 == 0) throw std::invalid_argument("Taylor envelope order must be odd");
  } else {
    if (p.order % 2 == 1) throw std::invalid_argument("convergent lower index must be even");
    if (sgn(p.a.value()) == 0 && !p.open_left)
      throw std::invalid_argument("convergent envelopes need x > 0: open the piece at 0");
  }
}

/// d > 0 on the piece; all-nonnegative coefficients settle it directly.
inline PositivityReport denominator_positive(const Polynomial& d, const Piece& p, bool isolate) {
  bool nonneg = !d.is_zero();
  for (const auto& c : d.coefficients())
    if (sgn(c) < 0) nonneg = false;
  const bool away_from_zero = sgn(p.a.value()) > 0 || p.open_left || (!d.is_zero() && sgn(d[0]) > 0);
  if (nonneg && away_from_zero) {
    PositivityReport r;
    r.polynomial = d;
    r.positive = true;
    r.verdict = Verdict::proved;
    r.note = "nonnegative coefficients";
    return r;
  }
  return certify_positive(d, p, isolate);
}

inline PieceCertificate attempt_piece(const MillsExpression& expr, const Piece& p, const VerifyOptions& opt) {
  check_piece(p);
  PieceCertificate cert;
  cert.piece = p;
  cert.constants = p.constants.to_string();
  const ConstantBrackets k = p.constants.brackets();

  RationalEnvelope lower, upper;
  if (p.strategy == Strategy::taylor) {
    lower = RationalEnvelope(taylor_symbolic(p.order));
    upper = RationalEnvelope(taylor_symbolic(p.order + 1));
  } else {
    lower = RationalEnvelope(pq(p.order).Q, pq(p.order).P);
    upper = RationalEnvelope(pq(p.order + 1).Q, pq(p.order + 1).P);
  }
  std::optional<RationalEnvelope> el, eu;
  if (expr.exp) {
    el = exp_envelope(*expr.exp, p.exp_lower, true);
    eu = exp_envelope(*expr.exp, p.exp_upper, false);
  }

  SandwichResult s = sandwich(expr, lower, upper, k, p.mode, el, eu);
  if (!s.indeterminate.empty()) {
    cert.verdict = Verdict::indeterminate;
    cert.note = s.indeterminate;
    return cert;
  }
  cert.symbolic = s.symbolic;
  cert.content_normalized = s.content_normalized;
  for (const auto& [what, d] : s.denominators) {
    PositivityReport r = denominator_positive(d, p, opt.isolate_roots);
    cert.side_checks.emplace_back(what + " denominator > 0", r);
    if (r.verdict != Verdict::proved) {
      cert.verdict = Verdict::indeterminate;
      cert.note = what + " denominator not certified positive";
    }
  }
  for (const auto& req : s.requirements) {
    PositivityReport r = req.polynomial.is_zero() ? PositivityReport{} : certify_positive(req.polynomial, p, false);
    cert.side_checks.emplace_back(req.what, r);
    if (r.verdict != Verdict::proved) {
      cert.verdict = Verdict::indeterminate;
      cert.note = req.what + " not certified";
    }
  }
  if (!cert.note.empty()) return cert;
  cert.numerator = certify_positive(s.numerator, p, opt.isolate_roots);
  cert.verdict = cert.numerator.verdict;
  cert.note = cert.numerator.note;
  return cert;
}

inline Piece escalated(const Piece& p) {
  Piece q = p;
  q.order += 4;
  q.constants = p.constants.finer();
  if (q.exp_lower.kind != ExpEnvelope::Kind::zero) q.exp_lower.order += 4;
  q.exp_upper.order += 4;
  return q;
}

inline PieceCertificate verify_piece(const MillsExpression& expr, const Piece& p, const VerifyOptions& opt,
                                     int depth) {
  PieceCertificate cert = attempt_piece(expr, p, opt);
  if (cert.verdict == Verdict::proved || !opt.escalate) return cert;
  Piece q = p;
  for (int round = 1; round <= opt.escalation_rounds; ++round) {
    q = escalated(q);
    PieceCertificate next = attempt_piece(expr, q, opt);
    next.attempt = static_cast<unsigned>(round);
    if (next.verdict == Verdict::proved) return next;
    cert = std::move(next);
  }
  if (depth >= opt.max_split_depth) return cert;
  const Rational a = p.a.value();
  Rational mid = p.b.is_finite() ? Rational((a + p.b.value()) / 2) : std::max(Rational(2 * a), Rational(a + 1));
  Piece left = p, right = p;
  left.b = mid;
  right.a = mid;
  right.open_left = false;
  PieceCertificate split;
  split.piece = p;
  split.constants = p.constants.to_string();
  split.attempt = cert.attempt;
  split.note = "split at " + mid.get_str();
  split.subpieces.push_back(verify_piece(expr, left, opt, depth + 1));
  split.subpieces.push_back(verify_piece(expr, right, opt, depth + 1));
  split.verdict = combine(split.subpieces[0].verdict, split.subpieces[1].verdict);
  if (split.verdict == Verdict::proved) return split;
  return cert.verdict == Verdict::indeterminate ? cert : split;
}

}  // namespace detail

inline Certificate verify_claim(const Claim& claim, const VerifyOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  Certificate cert;
  cert.claim_id = claim.id;
  cert.description = claim.description;
  cert.verdict = claim.conditions.empty() ? Verdict::indeterminate : Verdict::proved;
  for (const auto& cond : claim.conditions) {
    ConditionCertificate cc;
    cc.label = cond.label;
    cc.expression = cond.expression.to_string();
    cc.verdict = cond.pieces.empty() ? Verdict::indeterminate : Verdict::proved;
    for (const auto& piece : cond.pieces) {
      cc.pieces.push_back(detail::verify_piece(cond.expression, piece, opt, 0));
      cc.verdict = detail::combine(cc.verdict, cc.pieces.back().verdict);
    }
    cert.verdict = detail::combine(cert.verdict, cc.verdict);
    cert.conditions.push_back(std::move(cc));
  }
  if (cert.verdict != Verdict::proved)
    cert.hint = "raise the envelope order or the constant precision, or split the failing piece";
  cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

// ---------------------------------------------------------------------------
// Built-in claims

namespace detail {

inline MillsTerm term(ConstExpr c, unsigned x, unsigned f, unsigned e = 0) { return {std::move(c), x, f, e}; }

inline Piece taylor_piece(Rational a, Rational b, bool open_left, unsigned order, ConstantMode mode,
                          ConstantChoice constants) {
  Piece p;
  p.a = a;
  p.b = b;
  p.open_left = open_left;
  p.strategy = Strategy::taylor;
  p.order = order;
  p.mode = mode;
  p.constants = constants;
  return p;
}

inline Piece convergent_piece(ExtendedRational a, ExtendedRational b, bool open_left, unsigned order,
                              ConstantMode mode, ConstantChoice constants) {
  Piece p;
  p.a = a;
  p.b = b;
  p.open_left = open_left;
  p.strategy = Strategy::convergent;
  p.order = order;
  p.mode = mode;
  p.constants = constants;
  return p;
}

/// (0, 1] with Taylor envelopes, [1, inf) with convergents.
inline std::vector<Piece> split_at_one(unsigned taylor_order, unsigned convergent_order, ConstantMode taylor_mode,
                                       ConstantChoice taylor_constants, ConstantMode convergent_mode,
                                       ConstantChoice convergent_constants) {
  return {taylor_piece(0, 1, true, taylor_order, taylor_mode, taylor_constants),
          convergent_piece(1, ExtendedRational::plus_infinity(), false, convergent_order, convergent_mode,
                           convergent_constants)};
}

inline std::vector<Piece> psi_pieces() {
  return split_at_one(7, 12, ConstantMode::late, ConstantChoice::sigma_pi_coarse(), ConstantMode::late,
                      ConstantChoice::sigma_pi_coarse());
}

/// f-free conditions need no envelope; one piece on (0, inf).
inline std::vector<Piece> whole_line(unsigned order = 0) {
  return {convergent_piece(0, ExtendedRational::plus_infinity(), true, order, ConstantMode::late,
                           ConstantChoice::sigma_pi_coarse())};
}

/// (a - c x f) > 0, using f < 1/x.
inline Condition side_condition(ConstExpr a, ConstExpr c) {
  return {"radical side condition", {{term(a, 0, 0), term(-c, 1, 1)}, std::nullopt}, whole_line(0)};
}

/// Squared form of psi < f (lower) or f < psi (upper) with
/// psi = a / (sqrt(alpha x^2 + b) + c x).
inline MillsExpression psi_expression(const ConstExpr& a, const ConstExpr& alpha, const ConstExpr& b,
                                      const ConstExpr& c, bool lower) {
  const ConstExpr s = lower ? ConstExpr(1) : ConstExpr(-1);
  return {{term(s * (alpha - c * c), 2, 2), term(s * b, 0, 2), term(s * 2 * a * c, 1, 1), term(-s * a * a, 0, 0)},
          std::nullopt};
}

inline Claim psi_claim(std::string id, const std::string& bound_id, std::string description,
                       std::optional<std::vector<Piece>> pieces = std::nullopt) {
  const BoundSpec& s = lookup_bound(bound_id);
  const bool lower = s.side == Side::lower;
  Claim c{std::move(id), std::move(description), {}};
  c.conditions.push_back({lower ? "squared lower inequality" : "squared upper inequality",
                          psi_expression(s.a, s.alpha, s.b, s.c, lower), pieces ? *pieces : psi_pieces()});
  if (!lower) c.conditions.push_back(side_condition(s.a, s.c));
  return c;
}

/// D f - N > 0 (lower) or N - D f > 0 (upper); D must be positive.
inline Claim rational_claim(std::string id, const SymbolicPolynomial& num, const SymbolicPolynomial& den, bool lower,
                            std::string description, std::vector<Piece> pieces) {
  MillsExpression e;
  const ConstExpr s = lower ? ConstExpr(1) : ConstExpr(-1);
  for (std::size_t k = 0; k < den.size(); ++k)
    if (!den[k].is_zero()) e.terms.push_back(term(s * den[k], static_cast<unsigned>(k), 1));
  for (std::size_t k = 0; k < num.size(); ++k)
    if (!num[k].is_zero()) e.terms.push_back(term(-s * num[k], static_cast<unsigned>(k), 0));
  Claim c{std::move(id), std::move(description), {}};
  c.conditions.push_back({lower ? "cleared lower inequality" : "cleared upper inequality", e, std::move(pieces)});
  MillsExpression d;
  for (std::size_t k = 0; k < den.size(); ++k)
    if (!den[k].is_zero()) d.terms.push_back(term(den[k], static_cast<unsigned>(k), 0));
  c.conditions.push_back({"denominator positive", d, whole_line()});
  return c;
}

inline std::vector<Piece> rational_pieces() {
  return split_at_one(7, 10, ConstantMode::late, ConstantChoice::sigma_pi_coarse(), ConstantMode::late,
                      ConstantChoice::sigma_pi_coarse());
}

inline Claim rational_claim_from(std::string id, const std::string& bound_id, std::string description) {
  const BoundSpec& s = lookup_bound(bound_id);
  return rational_claim(std::move(id), s.num, s.den, s.side == Side::lower, std::move(description),
                        rational_pieces());
}

/// lhs_num/lhs_den < rhs_num/rhs_den for x > 0 with positive denominators:
/// rhs_num lhs_den - lhs_num rhs_den > 0.
inline Condition ordering_condition(std::string label, const SymbolicPolynomial& lhs_num,
                                    const SymbolicPolynomial& lhs_den, const SymbolicPolynomial& rhs_num,
                                    const SymbolicPolynomial& rhs_den) {
  SymbolicPolynomial p = rhs_num * lhs_den - lhs_num * rhs_den;
  MillsExpression e;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (!p[k].is_zero()) e.terms.push_back(term(p[k], static_cast<unsigned>(k), 0));
  return {std::move(label), e, whole_line()};
}

inline Claim with_conditions(Claim c, const Claim& other) {
  for (const auto& cond : other.conditions) c.conditions.push_back(cond);
  return c;
}

inline MillsExpression convexity_expression() {
  return {{term(2, 0, 0), term(1, 2, 2), term(-1, 0, 2), term(-3, 1, 1)}, std::nullopt};
}

inline MillsExpression decreasing_expression() { return {{term(1, 0, 0), term(-1, 1, 1)}, std::nullopt}; }

inline std::vector<Piece> decreasing_pieces() { return whole_line(2); }

/// kappa = (1 - e^(-a x)) / (b x): lower b x f - 1 + e > 0, upper 1 - e - b x f > 0.
inline Claim kappa_claim(std::string id, const std::string& bound_id, std::string description) {
  const BoundSpec& s = lookup_bound(bound_id);
  const bool lower = s.side == Side::lower;
  const ConstExpr sg = lower ? ConstExpr(1) : ConstExpr(-1);
  MillsExpression e{{term(sg * s.kb, 1, 1), term(-sg, 0, 0), term(sg, 0, 0, 1)}, ExpSpec{s.ka, 1}};
  std::vector<Piece> pieces;
  if (lower) {
    Piece p1 = taylor_piece(0, 1, true, 7, ConstantMode::late, ConstantChoice::sigma_pi_coarse());
    p1.exp_lower = {ExpEnvelope::Kind::partial_sum, 9};
    Piece p2 = convergent_piece(1, 3, false, 10, ConstantMode::late, ConstantChoice::sigma_pi_coarse());
    p2.exp_lower = {ExpEnvelope::Kind::partial_sum, 15};
    Piece p3 = convergent_piece(3, ExtendedRational::plus_infinity(), false, 10, ConstantMode::late,
                                ConstantChoice::sigma_pi_coarse());
    p3.exp_lower = {ExpEnvelope::Kind::zero, 0};
    pieces = {p1, p2, p3};
  } else {
    for (Piece p : split_at_one(7, 10, ConstantMode::late, ConstantChoice::sigma_pi_coarse(), ConstantMode::late,
                                ConstantChoice::sigma_pi_coarse())) {
      p.exp_upper = {ExpEnvelope::Kind::reciprocal, 8};
      pieces.push_back(p);
    }
  }
  Claim c{std::move(id), std::move(description), {}};
  c.conditions.push_back({lower ? "cleared lower inequality" : "cleared upper inequality", e, pieces});
  return c;
}

inline Claim chernoff_lower_claim(std::string id, std::string description) {
  MillsExpression e{{term(1, 0, 1), term(-1, 0, 0, 1)}, ExpSpec{ConstExpr(make_rational(3, 5)), 2}};
  std::vector<Piece> pieces;
  for (Piece p : split_at_one(7, 4, ConstantMode::late, ConstantChoice::sigma_pi_coarse(), ConstantMode::late,
                              ConstantChoice::sigma_pi_coarse())) {
    p.exp_upper = {ExpEnvelope::Kind::reciprocal, 6};
    pieces.push_back(p);
  }
  return {std::move(id), std::move(description), {{"f - e > 0", e, pieces}}};
}

inline Claim decreasing_claim(std::string id, std::string description) {
  return {std::move(id), std::move(description), {{"1 - x f > 0", decreasing_expression(), decreasing_pieces()}}};
}

inline std::vector<Claim> build_registry() {
  std::vector<Claim> r;
  auto get = [&r](const std::string& id) -> const Claim& {
    for (const auto& c : r)
      if (c.id == id) return c;
    throw std::logic_error("claim registered out of order: " + id);
  };
  r.push_back({"convexity_g_positive",
               "g = 2 + x^2 f^2 - f^2 - 3 x f > 0 for x > 0, so 1/f is strictly convex",
               {{"g > 0", convexity_expression(),
                 {taylor_piece(0, 1, false, 7, ConstantMode::early, ConstantChoice::taylor_coarse()),
                  convergent_piece(1, ExtendedRational::plus_infinity(), false, 10, ConstantMode::early,
                                   ConstantChoice::taylor_coarse())}}}});
  r.push_back(psi_claim("W30_lower", "W_{3,0}",
                        "W_{3,0}(x) < f(x) for x > 0",
                        split_at_one(7, 12, ConstantMode::late, ConstantChoice::sigma_pi_coarse(),
                                     ConstantMode::late, ConstantChoice::sigma_pi_coarse())));
  r.push_back(psi_claim("W12_lower", "W_{1,2}", "W_{1,2}(x) < f(x) for x > 0"));
  r.push_back(psi_claim("W21_upper", "W_{2,1}", "f(x) < W_{2,1}(x) for x > 0"));
  r.push_back(psi_claim("W03_upper", "W_{0,3}", "f(x) < W_{0,3}(x) for x > 0 (8 g > 0)"));
  r.push_back(psi_claim("birnbaum_lower", "BIRNBAUM", "2/(sqrt(x^2+4)+x) < f(x) for x > 0"));
  r.push_back(psi_claim("pollak_upper", "ETA_2", "f(x) < 2/(sqrt(x^2+8/pi)+x) for x > 0"));
  r.push_back(psi_claim("chi2_lower", "CHI_2", "3/(sqrt(x^2+6)+2x) < f(x) for x > 0"));
  r.push_back(psi_claim("local2_lower", "LOCAL2_lower", "200/(sqrt(1521x^2+25600)+161x) < f(x) for x > 0"));
  r.push_back(psi_claim("local2_upper", "LOCAL2_upper", "f(x) < 192/(sqrt(4225x^2+20736)+127x) for x > 0"));
  r.push_back(rational_claim_from("pade_p01_upper", "p_{0,1}", "f(x) < p_{0,1}(x) for x > 0"));
  {
    // p_{1,2} with numerator and denominator negated so the denominator is positive
    const BoundSpec& s = lookup_bound("p_{1,2}");
    SymbolicPolynomial n = SymbolicPolynomial{ConstExpr(-1)} * s.num;
    SymbolicPolynomial d = SymbolicPolynomial{ConstExpr(-1)} * s.den;
    r.push_back(rational_claim("pade_p12_lower", n, d, true, "p_{1,2}(x) < f(x) for x > 0", rational_pieces()));
  }
  r.push_back(rational_claim_from("U11_lower", "U_{1,1}", "U_{1,1}(x) < f(x) for x > 0"));
  r.push_back(rational_claim_from("U20_upper", "U_{2,0}", "f(x) < U_{2,0}(x) for x > 0"));
  {
    const BoundSpec& u11 = lookup_bound("U_{1,1}");
    const BoundSpec& lo = lookup_bound("U_rational_lower");
    Claim c{"U_rational_lower", "105/(91+110x) < U_{1,1}(x) < f(x) for x > 0",
            {ordering_condition("105/(91+110x) < U_{1,1}", lo.num, lo.den, u11.num, u11.den)}};
    r.push_back(with_conditions(c, get("U11_lower")));
  }
  {
    const BoundSpec& u20 = lookup_bound("U_{2,0}");
    const BoundSpec& up = lookup_bound("U_rational_upper");
    Claim c{"U_rational_upper", "f(x) < U_{2,0}(x) < 44/(35+28x) for x > 0",
            {ordering_condition("U_{2,0} < 44/(35+28x)", u20.num, u20.den, up.num, up.den)}};
    r.push_back(with_conditions(c, get("U20_upper")));
  }
  r.push_back(rational_claim_from("V22_lower", "V_{2,2}", "V_{2,2}(x) < f(x) for x > 0"));
  r.push_back(rational_claim_from("V13_upper", "V_{1,3}", "f(x) < V_{1,3}(x) for x > 0"));
  r.push_back(rational_claim_from("V31_upper", "V_{3,1}", "f(x) < V_{3,1}(x) for x > 0"));
  {
    const BoundSpec& v22 = lookup_bound("V_{2,2}");
    const BoundSpec& lo = lookup_bound("V_rational_lower");
    Claim c{"V_rational_lower", "(35+15x)/(28+37x+16x^2) < V_{2,2}(x) < f(x) for x > 0",
            {ordering_condition("(35+15x)/(28+37x+16x^2) < V_{2,2}", lo.num, lo.den, v22.num, v22.den)}};
    r.push_back(with_conditions(c, get("V22_lower")));
  }
  {
    const BoundSpec& v13 = lookup_bound("V_{1,3}");
    const BoundSpec& up = lookup_bound("V_rational_upper");
    Claim c{"V_rational_upper", "f(x) < V_{1,3}(x) < (2/5)(13+10x)/(4+5x+4x^2) for x > 0",
            {ordering_condition("V_{1,3} < (2/5)(13+10x)/(4+5x+4x^2)", v13.num, v13.den, up.num, up.den)}};
    r.push_back(with_conditions(c, get("V13_upper")));
  }
  r.push_back(kappa_claim("Z20_lower", "Z_{2,0}", "Z_{2,0}(x) < f(x) for x > 0"));
  r.push_back(kappa_claim("Z11_upper", "Z_{1,1}", "f(x) < Z_{1,1}(x) for x > 0"));
  r.push_back(chernoff_lower_claim("chernoff_lower", "exp(-3x^2/5) < f(x) for x > 0"));
  r.push_back(decreasing_claim("f_decreasing", "f'(x) = x f(x) - 1 < 0 for x > 0"));
  r.push_back(decreasing_claim("chernoff_upper",
                               "f(x) < sqrt(pi/2) for x > 0: f(0) = sqrt(pi/2) and 1 - x f > 0 (f decreasing)"));
  r.push_back(chernoff_lower_claim("q_chernoff_lower",
                                   "exp(-11x^2/10)/sqrt(2pi) < Q(x) for x > 0, equivalent to exp(-3x^2/5) < f(x)"));
  r.push_back(decreasing_claim("q_chernoff_upper",
                               "Q(x) < exp(-x^2/2)/2 for x > 0, equivalent to f(x) < sqrt(pi/2)"));
  std::sort(r.begin(), r.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
  return r;
}

}  // namespace detail

/// Built-in claims ordered by id.
inline const std::vector<Claim>& builtin_claims() {
  static const std::vector<Claim> registry = detail::build_registry();
  return registry;
}

inline const Claim* find_claim(const std::string& id) {
  for (const auto& c : builtin_claims())
    if (c.id == id) return &c;
  return nullptr;
}

inline const Claim& builtin_claim(const std::string& id) {
  const Claim* c = find_claim(id);
  if (!c) throw std::invalid_argument("unknown claim id: " + id);
  return *c;
}

/// Exponential and Chernoff catalog entries map to their registered claims.
inline Certificate verify_exponential_claim(const std::string& bound_id, const VerifyOptions& opt = {}) {
  const BoundSpec& s = lookup_bound(bound_id);
  static const std::vector<std::pair<std::string, std::string>> map = {
      {"Z_{2,0}", "Z20_lower"},          {"Z_{1,1}", "Z11_upper"},
      {"CHERNOFF_lower", "chernoff_lower"}, {"CHERNOFF_upper", "chernoff_upper"},
      {"Q_CHERNOFF_lower", "q_chernoff_lower"}, {"Q_CHERNOFF_upper", "q_chernoff_upper"}};
  for (const auto& [bound, claim] : map)
    if (bound == s.id) return verify_claim(builtin_claim(claim), opt);
  throw std::invalid_argument(s.id + " has no registered exponential claim");
}

}  // namespace mills
