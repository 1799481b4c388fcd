#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include "mills/mills.hpp"

using namespace mills;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(MILLS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.push_back("");
    rows.push_back(row);
  }
  return rows;
}

const char* kQuartic = "\"3416/5625x^4 - 469/150x^3 + 179249/90000x^2 - 94/75x + 2414/5625\"";

}  // namespace

TEST(Cli, EvalAtZero) {
  auto r = run("eval 0 --width 1e-12");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("f(0) ∈ [1.253314137315"), std::string::npos) << r.out;
}

TEST(Cli, EvalDerivative) {
  auto r = run("eval 1 --derivative 1 --format json");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  Enclosure e(parse_rational(j["exact"]["lo"].get<std::string>()), parse_rational(j["exact"]["hi"].get<std::string>()));
  EXPECT_TRUE(e.intersects(Enclosure(parse_rational("-0.34432045758120153"), parse_rational("-0.34432045758120152"))));
}

TEST(Cli, EvalRejectsBadInput) {
  EXPECT_EQ(run("eval -1").code, 2);
  EXPECT_EQ(run("eval abc").code, 2);
  EXPECT_EQ(run("eval 1 --width 0").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, TableReproducesConvergentOrdering) {
  auto r = run("table --range 0:5:11 --bounds Q3P3,Q2P2,J3,J2");
  ASSERT_EQ(r.code, 0);
  auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0][0], "x");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    auto v = [&](int k) { return parse_rational(rows[i][k]); };
    // columns: x, f_lo, f_hi, Q3P3_lo, Q3P3_hi, Q2P2_lo, Q2P2_hi, J3_lo, J3_hi, J2_lo, J2_hi
    EXPECT_LT(v(10), v(5)) << rows[i][0];
    EXPECT_LT(v(6), v(1)) << rows[i][0];
    EXPECT_LT(v(2), v(3)) << rows[i][0];
    EXPECT_LT(v(4), v(7)) << rows[i][0];
  }
}

TEST(Cli, TableNearTwo) {
  auto r = run("table --xs 2 --bounds LOCAL2_lower,LOCAL2_upper --format json");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  const auto& row = j["rows"][0];
  Rational lo = parse_rational(row["bounds"]["LOCAL2_lower"]["hi"].get<std::string>());
  Rational hi = parse_rational(row["bounds"]["LOCAL2_upper"]["lo"].get<std::string>());
  Rational flo = parse_rational(row["f"]["lo"].get<std::string>());
  Rational fhi = parse_rational(row["f"]["hi"].get<std::string>());
  EXPECT_LT(lo, flo);
  EXPECT_GT(hi, fhi);
  EXPECT_LT(hi - lo, parse_rational("0.03"));
}

TEST(Cli, TableErrors) {
  EXPECT_EQ(run("table --xs \"\"").code, 2);
  EXPECT_EQ(run("table --xs 1 --bounds NOPE").code, 2);
  EXPECT_EQ(run("table --range 1:0:3").code, 2);
}

TEST(Cli, CsvRoundTripsToEnclosures) {
  auto r = run("bounds eval W_{3,0} --xs 1/2,1,3 --format csv");
  ASSERT_EQ(r.code, 0);
  auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "bound_lo", "bound_hi", "f_lo", "f_hi"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    Rational x = parse_rational(rows[i][0]);
    Enclosure b(parse_rational(rows[i][1]), parse_rational(rows[i][2]));
    Enclosure f(parse_rational(rows[i][3]), parse_rational(rows[i][4]));
    EXPECT_TRUE(b.contains(eval_bound("W30", x)));
    EXPECT_TRUE(f.contains(mills_enclosure(x, pow10(-14))));
    EXPECT_TRUE(b.below(f));
  }
}

TEST(Cli, BoundsListAndGap) {
  auto l = run("bounds list --format json");
  ASSERT_EQ(l.code, 0);
  EXPECT_EQ(json::parse(l.out).size(), catalog().size());
  auto g = run("bounds gap W21 W30 --grid 512 --format json");
  ASSERT_EQ(g.code, 0);
  EXPECT_LT(parse_rational(json::parse(g.out)["sup_gap"].get<std::string>()), parse_rational("0.015"));
  EXPECT_EQ(run("bounds gap W21 NOPE").code, 2);
}

TEST(Cli, VerifyExitCodes) {
  auto r = run("verify convexity_g_positive");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PROVED"), std::string::npos);
  EXPECT_EQ(run("verify no_such_claim").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run(std::string("verify --file ") + MILLS_SAMPLES_DIR + "/false_claim.json").code, 1);
  EXPECT_EQ(run(std::string("verify --file ") + MILLS_SAMPLES_DIR + "/claims_example.json").code, 0);
  EXPECT_EQ(run("verify --file /nonexistent.json").code, 2);
}

TEST(Cli, VerifyJsonCertificate) {
  auto r = run("verify convexity_g_positive --format json");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "PROVED");
  EXPECT_EQ(j["conditions"][0]["pieces"][0]["numerator"]["coefficients"][0], "2414/5625");
}

TEST(Cli, VerifyAllSortedById) {
  auto r = run("verify --all --jobs 4");
  EXPECT_EQ(r.code, 0);
  std::stringstream ss(r.out);
  std::string line, prev;
  std::size_t n = 0;
  while (std::getline(ss, line)) {
    std::string id = line.substr(0, line.find(' '));
    EXPECT_LT(prev, id);
    EXPECT_NE(line.find("PROVED"), std::string::npos) << line;
    prev = id;
    ++n;
  }
  EXPECT_EQ(n, builtin_claims().size());
}

TEST(Cli, Sturm) {
  auto c = run(std::string("sturm count --poly ") + kQuartic + " --interval 0:0.45");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "0\n");
  auto i = run(std::string("sturm isolate --poly ") + kQuartic + " --interval 0:inf --format json");
  ASSERT_EQ(i.code, 0);
  json j = json::parse(i.out);
  ASSERT_EQ(j["intervals"].size(), 2u);
  EXPECT_GE(parse_rational(j["intervals"][0][0].get<std::string>()), parse_rational("0.45"));
  EXPECT_LE(parse_rational(j["intervals"][0][1].get<std::string>()), parse_rational("0.46"));
  auto a = run("sturm count --poly '[\"x^2\", \"-2\"]'");
  EXPECT_EQ(a.out, "2\n");
  EXPECT_EQ(run("sturm count --poly \"3x^^2\"").code, 2);
  EXPECT_EQ(run("sturm frobnicate --poly x").code, 2);
  EXPECT_EQ(run("sturm positive --poly \"x^2+1\"").out, "positive\n");
}
