#pragma once

// Text and JSON formats: constant expressions, polynomials, claim files and
// certificates.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mills/bounds.hpp"
#include "mills/const_expr.hpp"
#include "mills/polynomial.hpp"
#include "mills/rational.hpp"
#include "mills/sturm.hpp"
#include "mills/verifier.hpp"

namespace mills {

using json = nlohmann::json;

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  ConstExpr parse() {
    ConstExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in constant expression '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_atom_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '.';
  }

  ConstExpr expr() {
    ConstExpr e = term();
    for (;;) {
      if (eat('+')) {
        e += term();
      } else if (eat('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }
  ConstExpr term() {
    ConstExpr e = unary();
    for (;;) {
      if (eat('*')) {
        e *= unary();
      } else if (eat('/')) {
        ConstExpr d = unary();
        if (d.is_zero()) fail("division by zero");
        if (!d.is_monomial()) fail("division by a sum");
        e = e / d;
      } else if (at_atom_start()) {
        e *= power();  // implicit product, "2pi"
      } else {
        return e;
      }
    }
  }
  ConstExpr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  ConstExpr power() {
    ConstExpr base = atom();
    if (!eat('^')) return base;
    skip();
    bool paren = eat('(');
    bool negative = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("integer exponent expected");
    int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren && !eat(')')) fail("')' expected");
    if (negative) {
      if (!base.is_monomial()) fail("negative power of a sum");
      base = base.inverse();
    }
    ConstExpr out(1);
    for (int i = 0; i < k; ++i) out *= base;
    return out;
  }
  static ConstExpr sqrt_of(const ConstExpr& e) {
    if (e.is_zero()) return e;
    if (!e.is_monomial()) throw ParseError("sqrt of a sum is not a supported constant");
    const auto& [k, c] = *e.terms().begin();
    if (k % 2 != 0 || c < 0) throw ParseError("sqrt argument is not a square: " + e.to_string());
    Integer n = c.get_num(), d = c.get_den(), rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    if (rn * rn != n || rd * rd != d) throw ParseError("sqrt argument is not a rational square: " + e.to_string());
    return ConstExpr::sigma_power(k / 2, make_rational(rn, rd));
  }
  ConstExpr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ConstExpr e = expr();
      if (!eat(')')) fail("')' expected");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
          (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')) {
        pos_ += 2;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      return ConstExpr(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "pi") return ConstExpr::pi();
      if (name == "sigma" || name == "sqrt_pi_over_2") return ConstExpr::sigma();
      if (name == "sqrt_2pi") return ConstExpr::sqrt_2pi();
      if (name == "pi_squared") return ConstExpr::pi_squared();
      if (name == "sqrt") {
        if (!eat('(')) fail("'(' expected after sqrt");
        ConstExpr inner = expr();
        if (!eat(')')) fail("')' expected");
        return sqrt_of(inner);
      }
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace detail

/// Parses sums, products and integer powers of rationals and the constants
/// pi, sigma (= sqrt_pi_over_2), sqrt_2pi, pi_squared and sqrt(...) of
/// rational multiples of even powers of sigma ("sqrt(2pi)", "sqrt(8/pi)").
inline ConstExpr parse_const_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Parses "c_k x^k + ... + c_0" with rational or decimal coefficients.
inline Polynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty polynomial");
  std::vector<Rational> coeffs;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!coeffs.empty() || i != 0) {
      throw ParseError("expected '+' or '-' at position " + std::to_string(i) + " in '" + s + "'");
    }
    std::size_t start = i;
    while (i < s.size() && s[i] != 'x' && s[i] != '*' && s[i] != '+' && s[i] != '-') {
      if ((s[i] == 'e' || s[i] == 'E') && i + 1 < s.size() && (s[i + 1] == '-' || s[i + 1] == '+')) ++i;
      ++i;
    }
    Rational c = start == i ? Rational(1) : parse_rational(s.substr(start, i - start));
    if (i < s.size() && s[i] == '*') {
      ++i;
      if (i >= s.size() || s[i] != 'x') throw ParseError("'x' expected after '*' in '" + s + "'");
    }
    std::size_t k = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t e0 = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (e0 == i) throw ParseError("exponent expected in '" + s + "'");
        k = std::stoul(s.substr(e0, i - e0));
      }
    } else if (start == i) {
      throw ParseError("empty term in '" + s + "'");
    }
    if (coeffs.size() <= k) coeffs.resize(k + 1, Rational(0));
    coeffs[k] += sign * c;
  }
  return Polynomial(std::move(coeffs));
}

/// Polynomial from a JSON string or an array of term strings (summed).
inline Polynomial polynomial_from_json(const json& j) {
  if (j.is_string()) return parse_polynomial(j.get<std::string>());
  if (!j.is_array() || j.empty()) throw ParseError("polynomial must be a string or a non-empty array of strings");
  Polynomial p;
  for (const auto& t : j) {
    if (!t.is_string()) throw ParseError("polynomial terms must be strings");
    p = p + parse_polynomial(t.get<std::string>());
  }
  return p;
}

/// "inf", "+inf", "-inf" or a rational.
inline ExtendedRational parse_extended(std::string_view text) {
  std::string s(text);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity") return ExtendedRational::plus_infinity();
  if (s == "-inf" || s == "-infinity") return ExtendedRational::minus_infinity();
  return parse_rational(s);
}

// ---------------------------------------------------------------------------
// Claim files

namespace detail {

inline std::string json_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("expected a string or an integer, got " + j.dump());
}

inline unsigned json_unsigned(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(std::string(what) + " must be a nonnegative integer");
  return static_cast<unsigned>(j.get<long long>());
}

inline ExpEnvelope exp_envelope_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  ExpEnvelope e;
  if (kind == "partial_sum") e.kind = ExpEnvelope::Kind::partial_sum;
  else if (kind == "zero") e.kind = ExpEnvelope::Kind::zero;
  else if (kind == "reciprocal") e.kind = ExpEnvelope::Kind::reciprocal;
  else throw ParseError("unknown exponential envelope '" + kind + "'");
  if (j.contains("order")) e.order = json_unsigned(j.at("order"), "order");
  return e;
}

inline json exp_envelope_to_json(const ExpEnvelope& e) {
  const char* kind = e.kind == ExpEnvelope::Kind::partial_sum ? "partial_sum"
                     : e.kind == ExpEnvelope::Kind::zero      ? "zero"
                                                              : "reciprocal";
  return {{"kind", kind}, {"order", e.order}};
}

inline ConstantChoice constants_from_json(const json& j) {
  if (j.is_number_integer()) return ConstantChoice::at(static_cast<int>(j.get<long long>()));
  const std::string s = j.get<std::string>();
  if (s == "taylor_coarse") return ConstantChoice::taylor_coarse();
  if (s == "sigma_pi_coarse" || s == "coarse") return ConstantChoice::sigma_pi_coarse();
  throw ParseError("unknown constants choice '" + s + "'");
}

inline json constants_to_json(const ConstantChoice& c) {
  switch (c.kind) {
    case ConstantChoice::Kind::taylor_coarse: return "taylor_coarse";
    case ConstantChoice::Kind::sigma_pi_coarse: return "sigma_pi_coarse";
    case ConstantChoice::Kind::precision: return c.digits;
  }
  return nullptr;
}

inline MillsExpression expression_from_json(const json& j) {
  MillsExpression e;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() < 3 || t.size() > 4)
      throw ParseError("a term is [coefficient, x_power, f_power] or [coefficient, x_power, f_power, e_power]");
    MillsTerm term;
    term.coefficient = parse_const_expr(json_text(t[0]));
    term.x_power = json_unsigned(t[1], "x_power");
    term.f_power = json_unsigned(t[2], "f_power");
    if (t.size() == 4) term.e_power = json_unsigned(t[3], "e_power");
    e.terms.push_back(std::move(term));
  }
  if (j.contains("exp")) {
    const auto& x = j.at("exp");
    e.exp = ExpSpec{parse_const_expr(json_text(x.at("lambda"))), x.contains("power") ? json_unsigned(x.at("power"), "power") : 1u};
  }
  return e;
}

/// "strategy" is a list of {until?, method, order, mode?, constants?,
/// exp_lower?, exp_upper?}; each entry ends at "until" (the last one at the
/// interval end).
inline std::vector<Piece> pieces_from_json(const json& j) {
  const auto& interval = j.at("interval");
  if (!interval.is_array() || interval.size() != 2) throw ParseError("interval must be [a, b]");
  ExtendedRational a = parse_extended(json_text(interval[0]));
  const ExtendedRational b = parse_extended(json_text(interval[1]));
  bool open_left = j.value("open_left", true);
  std::vector<Piece> out;
  const auto& strategy = j.at("strategy");
  if (!strategy.is_array() || strategy.empty()) throw ParseError("strategy must be a non-empty list");
  for (std::size_t i = 0; i < strategy.size(); ++i) {
    const auto& s = strategy[i];
    Piece p;
    p.a = a;
    p.open_left = open_left;
    p.b = s.contains("until") ? parse_extended(json_text(s.at("until"))) : b;
    if (!s.contains("until") && i + 1 != strategy.size()) throw ParseError("only the last strategy entry may omit 'until'");
    const std::string method = s.at("method").get<std::string>();
    if (method == "taylor") p.strategy = Strategy::taylor;
    else if (method == "convergent") p.strategy = Strategy::convergent;
    else throw ParseError("unknown method '" + method + "'");
    p.order = json_unsigned(s.at("order"), "order");
    const std::string mode = s.value("mode", std::string("late"));
    if (mode == "late") p.mode = ConstantMode::late;
    else if (mode == "early") p.mode = ConstantMode::early;
    else throw ParseError("unknown mode '" + mode + "'");
    p.constants = s.contains("constants") ? constants_from_json(s.at("constants")) : ConstantChoice::sigma_pi_coarse();
    if (s.contains("exp_lower")) p.exp_lower = exp_envelope_from_json(s.at("exp_lower"));
    if (s.contains("exp_upper")) p.exp_upper = exp_envelope_from_json(s.at("exp_upper"));
    out.push_back(p);
    a = p.b;
    open_left = false;
  }
  return out;
}

inline Condition condition_from_json(const json& j, const std::string& default_label) {
  return {j.value("label", default_label), expression_from_json(j), pieces_from_json(j)};
}

}  // namespace detail

/// A claim: {"id", "description"?, and either "conditions": [...] or the
/// fields of a single condition: "terms", "exp"?, "interval", "open_left"?,
/// "strategy"}.
inline Claim claim_from_json(const json& j) {
  Claim c;
  c.id = j.at("id").get<std::string>();
  c.description = j.value("description", std::string());
  if (j.contains("conditions")) {
    for (const auto& cond : j.at("conditions")) c.conditions.push_back(detail::condition_from_json(cond, "condition"));
  } else {
    c.conditions.push_back(detail::condition_from_json(j, "expression > 0"));
  }
  return c;
}

/// Accepts {"claims": [...]}, a bare list, or a single claim object.
inline std::vector<Claim> claims_from_json(const json& j) {
  std::vector<Claim> out;
  const json* list = &j;
  if (j.is_object() && j.contains("claims")) list = &j.at("claims");
  if (list->is_array()) {
    for (const auto& c : *list) out.push_back(claim_from_json(c));
  } else {
    out.push_back(claim_from_json(*list));
  }
  return out;
}

inline json expression_to_json(const MillsExpression& e) {
  json terms = json::array();
  for (const auto& t : e.terms) {
    json term = {t.coefficient.to_string(), t.x_power, t.f_power};
    if (t.e_power) term.push_back(t.e_power);
    terms.push_back(term);
  }
  json out = {{"terms", terms}};
  if (e.exp) out["exp"] = {{"lambda", e.exp->lambda.to_string()}, {"power", e.exp->power}};
  return out;
}

inline json piece_to_json(const Piece& p) {
  return {{"interval", {p.a.to_string(), p.b.to_string()}},
          {"open_left", p.open_left},
          {"method", p.strategy == Strategy::taylor ? "taylor" : "convergent"},
          {"order", p.order},
          {"envelope", p.envelope()},
          {"mode", p.mode == ConstantMode::late ? "late" : "early"},
          {"constants", detail::constants_to_json(p.constants)},
          {"exp_lower", detail::exp_envelope_to_json(p.exp_lower)},
          {"exp_upper", detail::exp_envelope_to_json(p.exp_upper)}};
}

inline json claim_to_json(const Claim& c) {
  json conditions = json::array();
  for (const auto& cond : c.conditions) {
    json j = expression_to_json(cond.expression);
    j["label"] = cond.label;
    json pieces = json::array();
    for (const auto& p : cond.pieces) pieces.push_back(piece_to_json(p));
    j["pieces"] = pieces;
    conditions.push_back(j);
  }
  return {{"id", c.id}, {"description", c.description}, {"conditions", conditions}};
}

// ---------------------------------------------------------------------------
// Certificates

inline json polynomial_to_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(c.get_str());
  return coeffs;
}

inline json roots_to_json(const std::vector<RootInterval>& roots) {
  json out = json::array();
  for (const auto& r : roots) out.push_back({r.lo.get_str(), r.hi.get_str()});
  return out;
}

inline json positivity_to_json(const PositivityReport& r, bool with_polynomial = true) {
  json j = {{"verdict", to_string(r.verdict)},
            {"positive", r.positive},
            {"degree", r.polynomial.degree()},
            {"stripped_x_power", r.stripped_power},
            {"sturm_length", r.sturm_length},
            {"roots_in_interval", r.roots_in_interval},
            {"sign_left", r.sign_at_left},
            {"sign_right", r.sign_at_right},
            {"real_roots", roots_to_json(r.real_roots)}};
  if (with_polynomial) j["coefficients"] = polynomial_to_json(r.polynomial);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json piece_certificate_to_json(const PieceCertificate& p) {
  json j = piece_to_json(p.piece);
  j["verdict"] = to_string(p.verdict);
  j["attempt"] = p.attempt;
  if (!p.note.empty()) j["note"] = p.note;
  if (!p.subpieces.empty()) {
    json subs = json::array();
    for (const auto& s : p.subpieces) subs.push_back(piece_certificate_to_json(s));
    j["subpieces"] = subs;
    return j;
  }
  j["content_normalized"] = p.content_normalized;
  j["numerator"] = positivity_to_json(p.numerator);
  json side = json::array();
  for (const auto& [what, r] : p.side_checks) {
    json s = positivity_to_json(r, false);
    s["check"] = what;
    side.push_back(s);
  }
  j["side_checks"] = side;
  return j;
}

inline json certificate_to_json(const Certificate& c) {
  json conditions = json::array();
  for (const auto& cc : c.conditions) {
    json pieces = json::array();
    for (const auto& p : cc.pieces) pieces.push_back(piece_certificate_to_json(p));
    conditions.push_back(
        {{"label", cc.label}, {"expression", cc.expression}, {"verdict", to_string(cc.verdict)}, {"pieces", pieces}});
  }
  json j = {{"claim_id", c.claim_id},
            {"description", c.description},
            {"verdict", to_string(c.verdict)},
            {"seconds", c.seconds},
            {"conditions", conditions}};
  if (!c.hint.empty()) j["hint"] = c.hint;
  return j;
}

inline json enclosure_to_json(const Enclosure& e, int digits = 15) {
  return {{"lo", e.lo().get_str()},
          {"hi", e.hi().get_str()},
          {"lo_decimal", to_decimal(e.lo(), digits, -1)},
          {"hi_decimal", to_decimal(e.hi(), digits, +1)}};
}

inline json bound_to_json(const BoundSpec& s) {
  json params = json::object();
  for (const auto& [k, v] : s.params()) params[k] = v;
  json j = {{"id", s.id},
            {"aliases", s.aliases},
            {"family", to_string(s.family)},
            {"formula", s.formula},
            {"side", to_string(s.side)},
            {"target", s.target == BoundTarget::mills ? "f" : "Q"},
            {"domain", s.positive_domain ? "x>0" : "x>=0"},
            {"params", params}};
  if (s.coincidence) j["coincidence"] = {s.coincidence->i, s.coincidence->j};
  else j["coincidence"] = nullptr;
  return j;
}

}  // namespace mills
