#pragma once

// Sturm sequences, sign-change counting, root counting and isolation.

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mills/polynomial.hpp"
#include "mills/rational.hpp"

namespace mills {

/// A rational number or one of the two infinities.
class ExtendedRational {
 public:
  enum class Kind { minus_infinity, finite, plus_infinity };

  ExtendedRational(const Rational& v) : kind_(Kind::finite), value_(v) {}  // NOLINT
  ExtendedRational(int v) : kind_(Kind::finite), value_(v) {}              // NOLINT
  static ExtendedRational minus_infinity() { return ExtendedRational(Kind::minus_infinity); }
  static ExtendedRational plus_infinity() { return ExtendedRational(Kind::plus_infinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  const Rational& value() const {
    if (!is_finite()) throw std::logic_error("infinite point has no rational value");
    return value_;
  }

  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.kind_ == Kind::finite && b.kind_ == Kind::finite) return a.value_ < b.value_;
    return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
  }
  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::minus_infinity: return "-inf";
      case Kind::plus_infinity: return "+inf";
      case Kind::finite: return value_.get_str();
    }
    return "?";
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& p) { return os << p.to_string(); }

 private:
  explicit ExtendedRational(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_{0};
};

class EndpointRootError : public std::domain_error {
 public:
  explicit EndpointRootError(const Rational& at)
      : std::domain_error("interval endpoint " + at.get_str() + " is a root; perturb the endpoint"), point(at) {}
  Rational point;
};

/// exact: remainders exactly as in the textbook construction (p_{i+1} = -rem).
/// primitive: every element divided by its positive content; same signs
/// everywhere, much smaller numbers.
enum class SturmMode { exact, primitive };

struct SturmSequence {
  std::vector<Polynomial> polys;
  bool reduced = false;  ///< the input had a multiple root and was divided by gcd(p, p')
};

struct SignTable {
  ExtendedRational point;
  std::vector<int> signs;
  int changes = 0;
};

/// Sign of p at a point, using the leading term at +-inf.
inline int sign_at(const Polynomial& p, const ExtendedRational& at) {
  if (p.is_zero()) return 0;
  switch (at.kind()) {
    case ExtendedRational::Kind::plus_infinity: return sgn(p.leading());
    case ExtendedRational::Kind::minus_infinity: return (p.degree() % 2 == 0 ? 1 : -1) * sgn(p.leading());
    case ExtendedRational::Kind::finite: return sgn(eval(p, at.value()));
  }
  return 0;
}

inline SturmSequence sturm_sequence(const Polynomial& p, SturmMode mode = SturmMode::exact) {
  if (p.is_zero()) throw std::domain_error("Sturm sequence of the zero polynomial");
  SturmSequence s;
  Polynomial p0 = p;
  if (p.degree() >= 1) {
    Polynomial g = gcd(p, p.derivative());
    if (g.degree() >= 1) {
      p0 = divmod(p, g).first;
      s.reduced = true;
    }
  }
  if (mode == SturmMode::primitive) p0 = primitive_part(p0);
  s.polys.push_back(p0);
  if (p0.degree() == 0) return s;
  Polynomial p1 = p0.derivative();
  if (mode == SturmMode::primitive) p1 = primitive_part(p1);
  s.polys.push_back(p1);
  while (s.polys.back().degree() > 0) {
    const Polynomial& a = s.polys[s.polys.size() - 2];
    const Polynomial& b = s.polys.back();
    Polynomial r = -divmod(a, b).second;
    if (r.is_zero()) break;  // cannot happen after square-free reduction
    if (mode == SturmMode::primitive) r = primitive_part(r);
    s.polys.push_back(std::move(r));
  }
  return s;
}

inline SignTable sign_changes(const SturmSequence& s, const ExtendedRational& at) {
  SignTable t{at, {}, 0};
  int last = 0;
  for (const auto& p : s.polys) {
    int v = sign_at(p, at);
    t.signs.push_back(v);
    if (v == 0) continue;
    if (last != 0 && v != last) ++t.changes;
    last = v;
  }
  return t;
}

namespace detail {

inline void check_interval(const Polynomial& p, const ExtendedRational& a, const ExtendedRational& b) {
  if (!(a < b)) throw std::invalid_argument("interval needs a < b");
  if (a.is_finite() && sgn(eval(p, a.value())) == 0) throw EndpointRootError(a.value());
  if (b.is_finite() && sgn(eval(p, b.value())) == 0) throw EndpointRootError(b.value());
}

inline int count_with(const SturmSequence& s, const ExtendedRational& a, const ExtendedRational& b) {
  return sign_changes(s, a).changes - sign_changes(s, b).changes;
}

}  // namespace detail

/// Number of distinct real roots of p in the open interval (a, b).
inline int count_roots(const Polynomial& p, const ExtendedRational& a, const ExtendedRational& b) {
  if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
  detail::check_interval(p, a, b);
  return detail::count_with(sturm_sequence(p, SturmMode::primitive), a, b);
}

/// Cauchy bound: every real root has |x| < 1 + max |a_i / a_n|.
inline Rational cauchy_root_bound(const Polynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p[static_cast<std::size_t>(i)] / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

/// Isolating interval for one root: lo < root < hi, or lo == hi == root.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

/// Disjoint, ordered isolating intervals for the distinct real roots of p in
/// (a, b). With max_width > 0 each interval is refined below that width.
inline std::vector<RootInterval> isolate_roots(const Polynomial& p, const ExtendedRational& a,
                                               const ExtendedRational& b, const Rational& max_width = 0) {
  if (p.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
  detail::check_interval(p, a, b);
  const SturmSequence s = sturm_sequence(p, SturmMode::primitive);
  const Polynomial& sf = s.polys.front();
  std::vector<RootInterval> out;
  if (sf.degree() <= 0) return out;

  const Rational bound = cauchy_root_bound(sf);
  Rational lo = a.is_finite() ? a.value() : Rational(-bound);
  Rational hi = b.is_finite() ? b.value() : bound;
  if (!a.is_finite() && !b.is_finite()) {
    // both ends replaced; nothing else to clip
  } else if (!a.is_finite() && hi <= lo) {
    lo = hi - 1;
  } else if (!b.is_finite() && hi <= lo) {
    hi = lo + 1;
  }

  struct Job {
    Rational lo, hi;
    int count;
  };
  const int total = detail::count_with(s, lo, hi);
  std::vector<Job> stack;
  if (total > 0) stack.push_back({lo, hi, total});
  while (!stack.empty()) {
    Job job = stack.back();
    stack.pop_back();
    if (job.count == 1) {
      RootInterval r{job.lo, job.hi};
      if (max_width > 0) {
        const int sign_lo = sgn(eval(sf, r.lo));
        while (r.hi - r.lo > max_width) {
          Rational mid = (r.lo + r.hi) / 2;
          int sm = sgn(eval(sf, mid));
          if (sm == 0) {
            r.lo = r.hi = mid;
            break;
          }
          if (sm == sign_lo) {
            r.lo = mid;
          } else {
            r.hi = mid;
          }
        }
      }
      out.push_back(r);
      continue;
    }
    Rational mid = (job.lo + job.hi) / 2;
    if (sgn(eval(sf, mid)) == 0) {
      out.push_back({mid, mid});
      // split around the exact root, keeping it out of both halves
      Rational delta = (job.hi - job.lo) / 4;
      for (;;) {
        const Rational l = mid - delta, h = mid + delta;
        if (sgn(eval(sf, l)) != 0 && sgn(eval(sf, h)) != 0 && detail::count_with(s, l, h) == 1) {
          int left = detail::count_with(s, job.lo, l);
          int right = detail::count_with(s, h, job.hi);
          if (right > 0) stack.push_back({h, job.hi, right});
          if (left > 0) stack.push_back({job.lo, l, left});
          break;
        }
        delta /= 2;
      }
      continue;
    }
    int left = detail::count_with(s, job.lo, mid);
    int right = job.count - left;
    if (right > 0) stack.push_back({mid, job.hi, right});
    if (left > 0) stack.push_back({job.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

/// Sign alternations in the coefficient list (zeros skipped).
inline int descartes_positive_bound(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("Descartes bound of the zero polynomial");
  int changes = 0, last = 0;
  for (const auto& c : p.coefficients()) {
    int v = sgn(c);
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

/// True iff p > 0 on the closed interval [a, b] (open at infinite ends).
/// A root at a finite endpoint answers false rather than throwing.
inline bool is_positive_on(const Polynomial& p, const ExtendedRational& a, const ExtendedRational& b) {
  if (!(a < b)) throw std::invalid_argument("interval needs a < b");
  if (p.is_zero()) return false;
  if (p.degree() == 0) return sgn(p[0]) > 0;
  if (a.is_finite() && sgn(eval(p, a.value())) <= 0) return false;
  if (b.is_finite() && sgn(eval(p, b.value())) <= 0) return false;
  if (!a.is_finite() && sign_at(p, a) <= 0) return false;
  if (!b.is_finite() && sign_at(p, b) <= 0) return false;
  return detail::count_with(sturm_sequence(p, SturmMode::primitive), a, b) == 0;
}

}  // namespace mills
