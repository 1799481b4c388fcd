#include <gtest/gtest.h>

#include <fstream>

#include "mills/mills.hpp"

using namespace mills;

namespace {

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST(ConstExprParser, Constants) {
  EXPECT_EQ(parse_const_expr("pi"), ConstExpr::pi());
  EXPECT_EQ(parse_const_expr("sigma"), ConstExpr::sigma());
  EXPECT_EQ(parse_const_expr("sqrt_pi_over_2"), ConstExpr::sigma());
  EXPECT_EQ(parse_const_expr("sqrt_2pi"), ConstExpr::sqrt_2pi());
  EXPECT_EQ(parse_const_expr("pi_squared"), ConstExpr::pi_squared());
  EXPECT_EQ(parse_const_expr("sqrt(2pi)"), ConstExpr::sqrt_2pi());
  EXPECT_EQ(parse_const_expr("sqrt(pi/2)"), ConstExpr::sigma());
}

TEST(ConstExprParser, Arithmetic) {
  EXPECT_EQ(parse_const_expr("2*pi - 4"), ConstExpr(2) * ConstExpr::pi() - ConstExpr(4));
  EXPECT_EQ(parse_const_expr("(pi-2)^2"), (ConstExpr::pi() - ConstExpr(2)) * (ConstExpr::pi() - ConstExpr(2)));
  EXPECT_EQ(parse_const_expr("-3/4"), ConstExpr(q("-3/4")));
  EXPECT_EQ(parse_const_expr("0.25 pi"), ConstExpr(q("1/4")) * ConstExpr::pi());
  EXPECT_EQ(parse_const_expr("pi^-1"), ConstExpr::pi().inverse());
  EXPECT_EQ(parse_const_expr("1/pi"), ConstExpr::pi().inverse());
}

TEST(ConstExprParser, Errors) {
  EXPECT_THROW(parse_const_expr("tau"), ParseError);
  EXPECT_THROW(parse_const_expr("1/(pi-3)"), ParseError);
  EXPECT_THROW(parse_const_expr("sqrt(3)"), ParseError);
  EXPECT_THROW(parse_const_expr("(1"), ParseError);
  EXPECT_THROW(parse_const_expr("1/0"), ParseError);
}

TEST(PolynomialParser, TextForms) {
  EXPECT_EQ(parse_polynomial("3x^2 - 1/2x + 7"), Polynomial({q("7"), q("-1/2"), q("3")}));
  EXPECT_EQ(parse_polynomial("-x^3 + x"), Polynomial({q("0"), q("1"), q("0"), q("-1")}));
  EXPECT_EQ(parse_polynomial("0.5*x"), Polynomial({q("0"), q("1/2")}));
  EXPECT_EQ(parse_polynomial("x + x"), Polynomial({q("0"), q("2")}));
  EXPECT_TRUE(parse_polynomial("x - x").is_zero());
  EXPECT_THROW(parse_polynomial(""), ParseError);
  EXPECT_THROW(parse_polynomial("3x^"), ParseError);
  EXPECT_THROW(parse_polynomial("3y"), ParseError);
}

TEST(PolynomialParser, JsonArray) {
  json j = json::parse(R"(["3416/5625 x^4", "-469/150 x^3", "179249/90000 x^2", "-94/75 x", "2414/5625"])");
  EXPECT_EQ(polynomial_from_json(j),
            parse_polynomial("3416/5625 x^4 - 469/150 x^3 + 179249/90000 x^2 - 94/75 x + 2414/5625"));
  EXPECT_THROW(polynomial_from_json(json::parse("[1, 2]")), ParseError);
}

TEST(ClaimFile, SingleClaim) {
  auto c = claim_from_json(json::parse(R"({
    "id": "t", "terms": [["2", 0, 0], ["1", 2, 2], ["-1", 0, 2], ["-3", 1, 1]],
    "interval": ["0", "inf"], "open_left": false,
    "strategy": [{"until": "1", "method": "taylor", "order": 7, "mode": "early", "constants": "taylor_coarse"},
                 {"method": "convergent", "order": 10, "mode": "early", "constants": "taylor_coarse"}]})"));
  ASSERT_EQ(c.conditions.size(), 1u);
  const auto& pieces = c.conditions[0].pieces;
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_EQ(pieces[0].b, ExtendedRational(1));
  EXPECT_EQ(pieces[1].a, ExtendedRational(1));
  EXPECT_FALSE(pieces[1].b.is_finite());
  EXPECT_EQ(pieces[0].strategy, Strategy::taylor);
  auto cert = verify_claim(c);
  EXPECT_EQ(cert.verdict, Verdict::proved);
  EXPECT_EQ(cert.conditions[0].pieces[0].numerator.polynomial,
            verify_claim(builtin_claim("convexity_g_positive")).conditions[0].pieces[0].numerator.polynomial);
}

TEST(ClaimFile, Errors) {
  EXPECT_THROW(claim_from_json(json::parse(R"({"id": "x", "terms": [["1", 0]], "interval": ["0", "1"],
    "strategy": [{"method": "taylor", "order": 7}]})")), ParseError);
  EXPECT_THROW(claim_from_json(json::parse(R"({"id": "x", "terms": [["1", 0, 1]], "interval": ["0", "1"],
    "strategy": [{"method": "newton", "order": 7}]})")), ParseError);
  EXPECT_THROW(claim_from_json(json::parse(R"({"id": "x", "terms": [["1", 0, 1]], "interval": ["0", "1"],
    "strategy": [{"method": "taylor", "order": 7}, {"method": "convergent", "order": 4}]})")), ParseError);
  EXPECT_THROW(claim_from_json(json::parse(R"({"terms": []})")), json::exception);
}

TEST(ClaimFile, SampleFileIsProved) {
  std::ifstream in(std::string(MILLS_SAMPLES_DIR) + "/claims_example.json");
  ASSERT_TRUE(in);
  auto claims = claims_from_json(json::parse(in));
  EXPECT_EQ(claims.size(), 4u);
  for (const auto& c : claims) EXPECT_EQ(verify_claim(c).verdict, Verdict::proved) << c.id;
}

TEST(ClaimFile, RoundTrip) {
  const auto& c = builtin_claim("chernoff_lower");
  json j = claim_to_json(c);
  for (auto& cond : j["conditions"]) {
    cond["interval"] = {cond["pieces"][0]["interval"][0], cond["pieces"].back()["interval"][1]};
    cond["open_left"] = cond["pieces"][0]["open_left"];
    json strategy = json::array();
    for (const auto& p : cond["pieces"]) {
      json s = p;
      s["until"] = p["interval"][1];
      strategy.push_back(s);
    }
    strategy.back().erase("until");
    cond["strategy"] = strategy;
  }
  Claim back = claim_from_json(j);
  ASSERT_EQ(back.conditions.size(), c.conditions.size());
  EXPECT_EQ(back.conditions[0].expression.to_string(), c.conditions[0].expression.to_string());
  EXPECT_EQ(back.conditions[0].pieces.size(), c.conditions[0].pieces.size());
  EXPECT_EQ(verify_claim(back).verdict, Verdict::proved);
}

TEST(Certificate, JsonShape) {
  json j = certificate_to_json(verify_claim(builtin_claim("convexity_g_positive")));
  EXPECT_EQ(j["claim_id"], "convexity_g_positive");
  EXPECT_EQ(j["verdict"], "PROVED");
  const auto& p0 = j["conditions"][0]["pieces"][0];
  EXPECT_EQ(p0["numerator"]["coefficients"][0], "2414/5625");
  EXPECT_EQ(p0["numerator"]["roots_in_interval"], 0);
  EXPECT_EQ(p0["numerator"]["real_roots"].size(), 2u);
  EXPECT_EQ(j["conditions"][0]["pieces"][1]["numerator"]["degree"], 36);
}

TEST(Bounds, JsonShape) {
  json j = bound_to_json(lookup_bound("W_{2,1}"));
  EXPECT_EQ(j["side"], "UPPER");
  EXPECT_EQ(j["coincidence"], json::array({2, 1}));
}
