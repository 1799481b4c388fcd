#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mills/mills.hpp"

using namespace mills;

namespace {

Rational q(const char* s) { return parse_rational(s); }

bool near(const Enclosure& e, const char* v, const char* tol = "1e-15") {
  return e.intersects(Enclosure(q(v) - q(tol), q(v) + q(tol)));
}

double mills_double(double x) { return std::sqrt(M_PI / 2) * std::exp(x * x / 2) * std::erfc(x / std::sqrt(2.0)); }

}  // namespace

TEST(Oracle, ValueAtZero) {
  Enclosure e = mills_enclosure(Rational(0), pow10(-12));
  EXPECT_LE(e.width(), pow10(-12));
  EXPECT_TRUE(e.contains(q("1.2533141373155")));
  EXPECT_TRUE(e.intersects(constant_enclosure(ConstantId::sqrt_2pi, 30) / Enclosure(2)));
}

TEST(Oracle, KnownValues) {
  Enclosure one = mills_enclosure(Rational(1), pow10(-6));
  EXPECT_LE(one.width(), pow10(-6));
  EXPECT_TRUE(one.contains(q("0.6556795424")));
  Enclosure ten = mills_enclosure(Rational(10), pow10(-6));
  EXPECT_TRUE(near(ten, "0.0990285964717319213953"));
}

TEST(Oracle, MatchesErfcInDoublePrecision) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(0, 20000);
  for (int i = 0; i < 200; ++i) {
    Rational x = make_rational(num(rng), 1000);
    Enclosure e = mills_enclosure(x, pow10(-9));
    EXPECT_LE(e.width(), pow10(-9));
    EXPECT_TRUE(e.strictly_contains(Rational(mills_double(x.get_d())))) << x;
  }
}

TEST(Oracle, RejectsBadInput) {
  EXPECT_THROW(mills_enclosure(Rational(-1), pow10(-6)), std::domain_error);
  EXPECT_THROW(mills_enclosure(Rational(1), Rational(0)), std::invalid_argument);
}

TEST(Oracle, Derivatives) {
  EXPECT_TRUE(mills_derivative_enclosure({Rational(0), pow10(-10), 1}).contains(Rational(-1)));
  Enclosure f2 = mills_derivative_enclosure({Rational(0), pow10(-10), 2});
  EXPECT_TRUE(near(f2, "1.25331413731550025120788"));
  EXPECT_TRUE(mills_derivative_enclosure({Rational(1), pow10(-10), 3}).negative());
  Enclosure d1 = mills_derivative_enclosure({Rational(1), pow10(-10), 1});
  EXPECT_TRUE(near(d1, "-0.344320457581201528456"));
  // f' = x f - 1 at several points.
  for (const char* xs : {"1/3", "2", "7/2"}) {
    Rational x = q(xs);
    Enclosure f = mills_enclosure(x, pow10(-12));
    Enclosure d = mills_derivative_enclosure({x, pow10(-10), 1});
    EXPECT_TRUE(d.intersects(Enclosure(x) * f - Enclosure(1)));
  }
}

TEST(Oracle, CompleteMonotonicity) {
  for (unsigned n = 0; n <= 8; ++n)
    for (const char* xs : {"1/10", "1", "5/2", "5"}) {
      Enclosure d = mills_derivative_enclosure({q(xs), pow10(-12), n});
      Enclosure s = n % 2 == 0 ? d : Enclosure(0) - d;
      EXPECT_TRUE(s.positive()) << n << " " << xs;
    }
}

TEST(Oracle, QFunction) {
  EXPECT_TRUE(q_function(Rational(0), pow10(-10)).contains(q("1/2")));
  EXPECT_TRUE(near(q_function(Rational(1), pow10(-10)), "0.158655253931457051415"));
  EXPECT_TRUE(near(q_function(Rational(3), pow10(-10)), "0.00134989803163009452665"));
}

TEST(Oracle, LaplaceF) {
  EXPECT_TRUE(near(laplace_f_enclosure(Rational(0), pow10(-10)), "0.886226925452758013649"));
  EXPECT_TRUE(near(laplace_f_enclosure(Rational(1), pow10(-10)), "0.378936078070656053022"));
  for (const char* xs : {"1/2", "3/2", "4"}) {
    Rational x = q(xs);
    Enclosure root2 = sqrt_enclosure(Rational(2), 20);
    Enclosure lhs = root2 * laplace_f_enclosure(x / 1, pow10(-12));
    Enclosure rhs = mills_enclosure(Enclosure(x) * root2, pow10(-12));
    EXPECT_TRUE(lhs.intersects(rhs)) << xs;
  }
}
