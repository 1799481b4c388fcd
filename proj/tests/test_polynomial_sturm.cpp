#include <gtest/gtest.h>

#include "mills/mills.hpp"

using namespace mills;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Polynomial P(const char* s) { return parse_polynomial(s); }

const char* kQuartic = "3416/5625 x^4 - 469/150 x^3 + 179249/90000 x^2 - 94/75 x + 2414/5625";

ExtendedRational inf() { return ExtendedRational::plus_infinity(); }

}  // namespace

TEST(Polynomial, Evaluation) {
  EXPECT_EQ(eval(P("x^2 + 1"), Rational(0)), 1);
  EXPECT_EQ(eval(P("x^4 + 6x^2 + 3"), Rational(0)), 3);
  EXPECT_EQ(P("x^3 + 3x").degree(), 3);
  EXPECT_TRUE(Polynomial().is_zero());
}

TEST(Polynomial, TaylorLowerAtOneSumsCoefficients) {
  Polynomial t = P("-1/105 x^7 + 5/192 x^6 - 1/15 x^5 + 5/32 x^4 - 1/3 x^3 + 5/8 x^2 - x + 5/4");
  Rational sum = 0;
  for (const auto& c : t.coefficients()) sum += c;
  EXPECT_EQ(eval(t, Rational(1)), sum);
  EXPECT_EQ(eval(t, Rational(1)), q("1451/2240"));
}

TEST(Polynomial, Division) {
  auto [a, b] = divmod(P("x^2 + 1"), P("x"));
  EXPECT_EQ(a, P("x"));
  EXPECT_EQ(b, P("1"));
  auto [c, d] = divmod(P("x^3 + 3x"), P("x^2 + 1"));
  EXPECT_EQ(c, P("x"));
  EXPECT_EQ(d, P("2x"));
  auto [e, g] = divmod(P("x^2"), P("x^2"));
  EXPECT_EQ(e, P("1"));
  EXPECT_TRUE(g.is_zero());
}

TEST(Polynomial, Gcd) {
  EXPECT_EQ(monic(gcd(P("x^2 - 1"), P("x - 1"))), P("x - 1"));
  EXPECT_EQ(monic(gcd(P("x^2 - 2x + 1"), P("x^2 - 1"))), P("x - 1"));
  Polynomial p = P(kQuartic);
  EXPECT_EQ(gcd(p, p.derivative()).degree(), 0);
}

TEST(Polynomial, ContentAndPrimitivePart) {
  Polynomial p = P("6/5 x^2 - 9/10");
  EXPECT_EQ(content(p), q("3/10"));
  EXPECT_EQ(primitive_part(p), P("4x^2 - 3"));
}

TEST(Sturm, QuarticSequenceMatchesWorkedExample) {
  auto s = sturm_sequence(P(kQuartic));
  ASSERT_EQ(s.polys.size(), 5u);
  EXPECT_EQ(s.polys[1], P("13664/5625 x^3 - 469/50 x^2 + 179249/45000 x - 94/75"));
  EXPECT_EQ(s.polys[2], P("355316101/175680000 x^2 - 3202259/9369600 x - 1135387/43920000"));
  EXPECT_EQ(s.polys[3], P("-45065042306901196/18035647375691743 x + 24672388276565440/18035647375691743"));
  EXPECT_EQ(s.polys[4], P("-24548932950879333622396114393201747/62423915106233442706008445888230000"));
}

TEST(Sturm, QuarticSignChanges) {
  auto s = sturm_sequence(P(kQuartic));
  auto v0 = sign_changes(s, Rational(0));
  EXPECT_EQ(v0.signs, (std::vector<int>{1, -1, -1, 1, -1}));
  EXPECT_EQ(v0.changes, 3);
  EXPECT_EQ(sign_changes(s, q("45/100")).signs, (std::vector<int>{1, -1, 1, 1, -1}));
  EXPECT_EQ(sign_changes(s, q("45/100")).changes, 3);
  EXPECT_EQ(sign_changes(s, q("46/100")).signs, (std::vector<int>{-1, -1, 1, 1, -1}));
  EXPECT_EQ(sign_changes(s, q("46/100")).changes, 2);
  EXPECT_EQ(sign_changes(s, inf()).signs, (std::vector<int>{1, 1, 1, -1, -1}));
  EXPECT_EQ(sign_changes(s, inf()).changes, 1);
}

TEST(Sturm, SimpleSequences) {
  auto s = sturm_sequence(P("x^2 - 1"));
  ASSERT_EQ(s.polys.size(), 3u);
  EXPECT_EQ(s.polys[1], P("2x"));
  EXPECT_EQ(s.polys[2], P("1"));
  auto r = sturm_sequence(P("x^2 - 2x + 1"));
  EXPECT_TRUE(r.reduced);
  EXPECT_EQ(monic(r.polys[0]), P("x - 1"));
  auto t = sign_changes(sturm_sequence(P("x")), Rational(0));
  EXPECT_EQ(t.signs[0], 0);
  EXPECT_EQ(t.changes, 0);
}

TEST(Sturm, PrimitiveModeHasSameSigns) {
  auto e = sturm_sequence(P(kQuartic), SturmMode::exact);
  auto p = sturm_sequence(P(kQuartic), SturmMode::primitive);
  ASSERT_EQ(e.polys.size(), p.polys.size());
  for (const char* at : {"0", "45/100", "46/100", "3", "-2"})
    EXPECT_EQ(sign_changes(e, q(at)).signs, sign_changes(p, q(at)).signs);
}

TEST(Sturm, CountRoots) {
  EXPECT_EQ(count_roots(P(kQuartic), Rational(0), q("45/100")), 0);
  EXPECT_EQ(count_roots(P(kQuartic), Rational(0), inf()), 2);
  EXPECT_EQ(count_roots(P("x^2 + 1"), ExtendedRational::minus_infinity(), inf()), 0);
  EXPECT_EQ(count_roots(P("x^3 - x"), ExtendedRational::minus_infinity(), inf()), 3);
  EXPECT_THROW(count_roots(P("x^2 - 1"), Rational(1), Rational(2)), EndpointRootError);
}

TEST(Sturm, IsolateRoots) {
  auto r = isolate_roots(P(kQuartic), Rational(0), Rational(1), q("1/1000"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_GE(r[0].lo, q("45/100"));
  EXPECT_LE(r[0].hi, q("46/100"));

  Polynomial t7 = P("-1/105 x^7 + 5/192 x^6 - 1/15 x^5 + 5/32 x^4 - 1/3 x^3 + 5/8 x^2 - x + 5/4");
  auto t = isolate_roots(t7, Rational(0), Rational(4), q("1/1000"));
  ASSERT_FALSE(t.empty());
  EXPECT_GE(t[0].lo, q("31/16"));
  EXPECT_LE(t[0].hi, Rational(2));

  auto s = isolate_roots(P("x^2 - 2"), Rational(0), Rational(2), q("1/1000"));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_LT(s[0].lo * s[0].lo, 2);
  EXPECT_GT(s[0].hi * s[0].hi, 2);
}

TEST(Sturm, IsolatedIntervalsAreDisjointAndSingle) {
  Polynomial p = P("x^5 - 5x^3 + 4x + 1/10");
  auto r = isolate_roots(p, ExtendedRational::minus_infinity(), inf(), q("1/100"));
  ASSERT_EQ(r.size(), 5u);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_LE(r[i].hi - r[i].lo, q("1/100"));
    if (r[i].lo != r[i].hi) EXPECT_EQ(count_roots(p, r[i].lo, r[i].hi), 1);
    if (i) EXPECT_LE(r[i - 1].hi, r[i].lo);
  }
}

TEST(Sturm, DescartesBound) {
  EXPECT_EQ(descartes_positive_bound(P("x^2 - 1")), 1);
  EXPECT_EQ(descartes_positive_bound(P("x^2 + 1")), 0);
  EXPECT_EQ(descartes_positive_bound(P("x^12 + x^10 + x^8 + x^6 - x^4 - x^2 + 1")), 2);
}

TEST(Sturm, IsPositiveOn) {
  EXPECT_TRUE(is_positive_on(P("x^2 + 1"), Rational(0), Rational(1)));
  EXPECT_FALSE(is_positive_on(P("-1"), Rational(0), Rational(1)));
  EXPECT_FALSE(is_positive_on(P(kQuartic), Rational(0), Rational(1)));
  EXPECT_TRUE(is_positive_on(P(kQuartic), Rational(0), q("45/100")));
  EXPECT_FALSE(is_positive_on(P("x"), Rational(0), Rational(1)));
}
