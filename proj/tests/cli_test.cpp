#include <random>
#include <sstream>
#include <string>

#include "ellspec/cli/run.hpp"
#include "gtest/gtest.h"

namespace ellspec {
namespace {

using cli::JobConfig;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_job(const JobConfig& c) {
  std::ostringstream out, err;
  int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

JobConfig example1(const std::string& command) {
  JobConfig c;
  c.command = command;
  c.curve_a = "-t^2";
  c.curve_b = "t^2";
  c.gens = {"t:t", "0:t"};
  c.assert_saturated = true;
  return c;
}

TEST(ParserTest, Examples) {
  RatFn t = RatFn::t();
  EXPECT_EQ(parse_rational_function("-(t^2+27)"), -(t * t + RatFn(27)));
  EXPECT_EQ(parse_rational_function("-(t^2+27)").den(), UniPoly(Rational(1)));
  EXPECT_EQ(parse_rational_function("t"), t);
  RatFn f = parse_rational_function("(t^2+1)/(t-1)");
  EXPECT_EQ(f.num(), UniPoly({Rational(1), Rational(0), Rational(1)}));
  EXPECT_EQ(f.den(), UniPoly({Rational(-1), Rational(1)}));
  RatFn g = parse_rational_function("(t^2-1)/(2t-2)");
  EXPECT_EQ(g.num(), UniPoly({Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(g.den(), UniPoly(Rational(1)));
  EXPECT_EQ(parse_rational_function(" 10 t ^ 2 + 48*t+90 "),
            RatFn(10) * t * t + RatFn(48) * t + RatFn(90));
  EXPECT_EQ(parse_rational_function("-t^2"), -(t * t));
  EXPECT_EQ(parse_rational("-3/4"), Rational(-3, 4));
}

TEST(ParserTest, ErrorsCarryPosition) {
  auto pos = [](const std::string& s) -> long {
    try {
      parse_rational_function(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  EXPECT_EQ(pos("t+"), 2);
  EXPECT_EQ(pos("(t+1"), 4);
  EXPECT_EQ(pos("t+y"), 2);
  EXPECT_EQ(pos("t^"), 2);
  EXPECT_EQ(pos("1/(t-t)"), 1);
  EXPECT_EQ(pos("t)"), 1);
  EXPECT_THROW(parse_rational("t"), ParseError);
  EXPECT_THROW(parse_bivariate("x/(x+1)"), ParseError);
}

TEST(ParserTest, Bivariate) {
  ClearedPoly p = parse_bivariate("x^2 - t/2");
  EXPECT_EQ(to_string(p.poly), to_string(parse_bivariate("2x^2 - t").poly));
}

// Builds a random expression tree as text together with its value.
std::pair<std::string, RatFn> random_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  std::uniform_int_distribution<int> small(0, 9);
  switch (pick(rng)) {
    case 0: {
      int c = small(rng);
      return {std::to_string(c), RatFn(c)};
    }
    case 1:
      return {"t", RatFn::t()};
    case 2: {
      auto [a, va] = random_tree(rng, depth - 1);
      auto [b, vb] = random_tree(rng, depth - 1);
      return {"(" + a + ")+(" + b + ")", va + vb};
    }
    case 3: {
      auto [a, va] = random_tree(rng, depth - 1);
      auto [b, vb] = random_tree(rng, depth - 1);
      return {"(" + a + ")-(" + b + ")", va - vb};
    }
    case 4: {
      auto [a, va] = random_tree(rng, depth - 1);
      auto [b, vb] = random_tree(rng, depth - 1);
      return {"(" + a + ")*(" + b + ")", va * vb};
    }
    case 5: {
      auto [a, va] = random_tree(rng, depth - 1);
      auto [b, vb] = random_tree(rng, depth - 1);
      if (vb.is_zero()) return {"(" + a + ")", va};
      return {"(" + a + ")/(" + b + ")", va / vb};
    }
    default: {
      auto [a, va] = random_tree(rng, depth - 1);
      int e = small(rng) % 4;
      RatFn v(1);
      for (int i = 0; i < e; ++i) v = v * va;
      return {"-(" + a + ")^" + std::to_string(e), -v};
    }
  }
}

TEST(ParserTest, RoundTripRandomTrees) {
  std::mt19937 rng(20261016);
  for (int i = 0; i < 1000; ++i) {
    auto [text, value] = random_tree(rng, 4);
    RatFn parsed = parse_rational_function(text);
    ASSERT_EQ(parsed, value) << text;
    ASSERT_EQ(parse_rational_function(parsed.str()), parsed) << parsed.str();
  }
}

TEST(RangeTest, Parse) {
  EXPECT_EQ(cli::parse_range("3..1000"), std::make_pair(3LL, 1000LL));
  EXPECT_EQ(cli::parse_range("-5..-1"), std::make_pair(-5LL, -1LL));
  EXPECT_THROW(cli::parse_range("3-5"), cli::UsageError);
  EXPECT_THROW(cli::parse_range("3..x"), cli::UsageError);
}

TEST(RunTest, CheckExamples) {
  JobConfig c = example1("check");
  c.t0 = "5";
  Outcome a = run_job(c);
  EXPECT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out,
            "t0=5/1 n=2 verdict=CertifiedInjective reasons=- witnesses=[] saturation=asserted\n");
  c.t0 = "27";
  Outcome b = run_job(c);
  EXPECT_EQ(b.code, cli::kInconclusive);
  EXPECT_NE(b.out.find("2*(-9/1,81/1)=(27/1,27/1)"), std::string::npos) << b.out;
}

TEST(RunTest, BadParameterAndUsage) {
  JobConfig c = example1("check");
  c.t0 = "0";
  EXPECT_EQ(run_job(c).code, cli::kBadParameter);
  c.t0 = "t+";
  EXPECT_EQ(run_job(c).code, cli::kUsage);
  c.t0.reset();
  EXPECT_EQ(run_job(c).code, cli::kUsage);
  JobConfig bad_gen = example1("check");
  bad_gen.t0 = "5";
  bad_gen.gens = {"1:2"};
  EXPECT_EQ(run_job(bad_gen).code, cli::kUsage);
  JobConfig unknown;
  unknown.command = "frobnicate";
  EXPECT_EQ(run_job(unknown).code, cli::kUsage);
}

TEST(RunTest, CpFamily) {
  JobConfig c;
  c.command = "cp-family";
  c.t0 = "13";
  Outcome a = run_job(c);
  EXPECT_EQ(a.code, cli::kOk);
  EXPECT_NE(a.out.find("verdict=injective"), std::string::npos);
  c.t0 = "27";
  EXPECT_EQ(run_job(c).code, cli::kInconclusive);
  c.t0.reset();
  c.bound = 500;
  Outcome list = run_job(c);
  EXPECT_EQ(list.code, cli::kOk);
  EXPECT_NE(list.out.find("t0=459"), std::string::npos);
}

TEST(RunTest, ScanIsConcatenationOfChecks) {
  JobConfig s = example1("scan");
  s.range = {-3, 30};
  s.threads = 3;
  Outcome scanned = run_job(s);
  ASSERT_EQ(scanned.code, cli::kOk);
  std::string joined;
  for (long t0 = -3; t0 <= 30; ++t0) {
    JobConfig c = example1("check");
    c.t0 = std::to_string(t0);
    joined += run_job(c).out;
  }
  EXPECT_EQ(scanned.out.substr(0, joined.size()), joined);
  EXPECT_EQ(scanned.out.substr(joined.size()).rfind("scan range=-3..30", 0), 0U);
}

TEST(RunTest, ExitMatchesVerdict) {
  for (long t0 = 1; t0 <= 40; ++t0) {
    JobConfig c = example1("check");
    c.t0 = std::to_string(t0);
    Outcome o = run_job(c);
    if (o.out.find("CertifiedInjective") != std::string::npos) {
      EXPECT_EQ(o.code, cli::kOk);
    } else if (o.out.find("Inconclusive") != std::string::npos) {
      EXPECT_EQ(o.code, cli::kInconclusive);
    } else {
      EXPECT_EQ(o.code, cli::kBadParameter);
    }
  }
}

TEST(RunTest, JsonRecords) {
  JobConfig c = example1("check");
  c.t0 = "27";
  c.json = true;
  Outcome o = run_job(c);
  auto j = nlohmann::ordered_json::parse(o.out);
  EXPECT_EQ(j["t0"], "27/1");
  EXPECT_EQ(j["verdict"], "Inconclusive");
  EXPECT_EQ(j.begin().key(), "t0");
  EXPECT_EQ(j["assumptions"]["saturation"], "asserted");
  EXPECT_EQ(j["witnesses"][0], "2*(-9/1,81/1)=(27/1,27/1)");
}

TEST(RunTest, OtherCommands) {
  JobConfig d = example1("divpoly");
  Outcome dp = run_job(d);
  EXPECT_EQ(dp.code, cli::kOk);
  EXPECT_NE(dp.out.find("psi_sq n=2"), std::string::npos);

  JobConfig dv;
  dv.command = "division-points";
  dv.curve_a = "503844";
  dv.curve_b = "-45019744";
  dv.gens = {"88:0"};
  Outcome none = run_job(dv);
  EXPECT_EQ(none.code, cli::kOk);
  EXPECT_TRUE(none.out.empty());

  JobConfig halves = example1("division-points");
  halves.gens = {"27:27"};
  halves.curve_a = "-27^2";
  halves.curve_b = "27^2";
  Outcome h = run_job(halves);
  EXPECT_NE(h.out.find("2*(-9/1,81/1)=(27/1,27/1)"), std::string::npos) << h.out;

  JobConfig p;
  p.command = "pell";
  p.k = -4;
  p.bound = 100;
  Outcome pe = run_job(p);
  EXPECT_NE(pe.out.find("u=2 v=1 k=-4 D=8 primitive=true"), std::string::npos) << pe.out;

  JobConfig o;
  o.command = "oracle";
  o.poly = "x^2 - t";
  o.range = {0, 10};
  EXPECT_EQ(run_job(o).out, "t=0 x=0\nt=1 x=-1\nt=1 x=1\nt=4 x=-2\nt=4 x=2\nt=9 x=-3\nt=9 x=3\n");

  JobConfig ex;
  ex.command = "example1";
  Outcome e1 = run_job(ex);
  EXPECT_EQ(e1.code, cli::kOk);
  EXPECT_NE(e1.out.find("trivial_torsion=true"), std::string::npos);
  ex.command = "example2";
  ex.t0 = "30";
  Outcome e2 = run_job(ex);
  EXPECT_EQ(e2.code, cli::kInconclusive);
  EXPECT_NE(e2.out.find("reason=g-has-rational-root"), std::string::npos);

  JobConfig ex_set = example1("excluded");
  Outcome xs = run_job(ex_set);
  EXPECT_NE(xs.out.find("excluded t0=0/1"), std::string::npos);
}

}  // namespace
}  // namespace ellspec
