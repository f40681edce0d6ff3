// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails or overruns its time limit.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ellspec/cli/parser.hpp"
#include "ellspec/divpoly/division.hpp"
#include "ellspec/pell/pell.hpp"
#include "ellspec/presets.hpp"
#include "ellspec/specialization/injectivity.hpp"

using namespace ellspec;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

using FPoly = Poly<RatFn>;

const InjectivityChecker& rank_two_checker() {
  static const InjectivityChecker checker = [] {
    auto s = presets::rank_two_surface();
    return InjectivityChecker(s.curve, s.subgroup, 2);
  }();
  return checker;
}

const InjectivityChecker& rank_four_checker() {
  static const InjectivityChecker checker = [] {
    auto s = presets::rank_four_surface();
    return InjectivityChecker(s.curve, s.subgroup, 2);
  }();
  return checker;
}

// Displayed form equals the cleared polynomial; the constant relating the
// raw polynomial to the display is 1/unit and must be positive.
bool matches_display(const ClearedPoly& c, const std::string& display, std::string* constant) {
  BiPoly shown = parse_bivariate(display).poly;
  if (!(shown == c.poly)) return false;
  if (!c.unit.is_constant()) return false;
  Rational k = parse_rational(c.unit.str()).inverse();
  *constant = k.pretty();
  return k.sign() > 0;
}

Outcome division_goldens() {
  Outcome o;
  // A = t, B = t^5 keeps A^i B^j of equal weight distinct.
  RatFn a = RatFn::t();
  RatFn b = RatFn::t().pow(5);
  FunctionCurve e(a, b);
  DivisionTower<RatFn> tower(e);
  auto t2 = division_triple(tower, 2);
  o.require(t2.psi.has_y && t2.psi.h == FPoly({RatFn(2)}), "psi2");
  o.require(t2.psi_sq == FPoly({RatFn(4) * b, RatFn(4) * a, RatFn(0), RatFn(4)}), "psi2^2");
  auto t3 = division_triple(tower, 3);
  o.require(!t3.psi.has_y &&
                t3.psi.h == FPoly({-(a * a), RatFn(12) * b, RatFn(6) * a, RatFn(0), RatFn(3)}),
            "psi3");
  auto t4 = division_triple(tower, 4);
  FPoly inner({RatFn(-8) * b * b - a * a * a, RatFn(-4) * a * b, RatFn(-5) * a * a,
               RatFn(20) * b, RatFn(5) * a, RatFn(0), RatFn(1)});
  o.require(t4.psi.has_y && t4.psi.h == RatFn(4) * inner, "psi4");
  for (int n = 2; n <= 7; ++n) {
    auto t = division_triple(tower, n);
    o.require(t.psi_sq.degree() == n * n - 1, "deg psi^2 n=" + std::to_string(n));
    o.require(t.phi.degree() == n * n, "deg phi n=" + std::to_string(n));
  }
  return o;
}

Outcome two_torsion_counterexample() {
  Outcome o;
  RationalCurve e(Rational(503844), Rational(-45019744));
  auto p = e.point(Rational(88), Rational(0));
  UniPoly f = UniPoly({Rational(-814), Rational(1)}) * UniPoly({Rational(638), Rational(1)});
  o.require(division_poly_of_point(e, 2, p) == f * f, "d_2 mismatch");
  o.require(n_division_points(e, p, 2).empty(), "halves found");
  return o;
}

Outcome certified_at_five() {
  Outcome o;
  auto r = rank_two_checker().check(Rational(5));
  o.require(r.verdict == Verdict::CertifiedInjective, "verdict " + to_string(r.verdict));
  auto probe = probe_torsion(rank_two_checker().curve(), {Rational(5)});
  o.require(probe.trivial, "torsion probe");
  o.require(r.condition2.size() == 3, "three polynomials");
  for (const auto& ev : r.condition2) o.require(ev.roots.empty(), "nonempty root set");
  return o;
}

Outcome witness_at_twenty_seven() {
  Outcome o;
  auto r = rank_two_checker().check(Rational(27));
  o.require(r.verdict == Verdict::Inconclusive, "verdict " + to_string(r.verdict));
  RationalCurve e27(Rational(-729), Rational(729));
  auto w = e27.point(Rational(-9), Rational(81));
  auto target = e27.point(Rational(27), Rational(27));
  o.require(e27.smul(2, w) == target, "smul");
  o.require(mult_by_n_formula(e27, 2, w) == target, "formula");
  bool listed = false;
  for (const auto& x : r.witnesses) listed = listed || (x.point == w && x.target == target);
  o.require(listed, "witness missing from report");
  return o;
}

Outcome rank_two_displays(std::string* constant) {
  Outcome o;
  const auto& c = rank_two_checker();
  const std::string base = "x^4+2t^2x^2-8t^2x+t^4";
  const std::string cubic = "(4x^3-4t^2x+4t^2)";
  std::string k;
  o.require(matches_display(c.division_polys()[0], base + "-t" + cubic, &k), "d_P");
  o.require(matches_display(c.division_polys()[1], base, &k), "d_Q");
  o.require(matches_display(c.division_polys()[2], base + "+t" + cubic, &k), "d_P+Q");
  o.require(matches_display(c.psi_squared(), "x^3-t^2x+t^2", constant), "g");
  return o;
}

Outcome integral_points() {
  Outcome o;
  const auto& c = rank_two_checker();
  using P = std::vector<std::pair<Integer, Integer>>;
  o.require(brute_force_integral_points(c.division_polys()[1].poly, 1, 200) == P{{2, 2}}, "C_Q");
  o.require(brute_force_integral_points(c.psi_squared().poly, -200, 200) == P{{0, 0}}, "C_2");
  o.require(brute_force_integral_points(c.division_polys()[2].poly, 3, 200).empty(), "C_P+Q");
  return o;
}

Outcome pell_lemmas() {
  Outcome o;
  const Integer bound(1000000);
  for (long k : {-2L, -1L, 2L}) {
    o.require(pell_like_solutions(8, k, bound).empty(), "k=" + std::to_string(k));
  }
  std::vector<long> ks{4};
  for (int l = 4; l <= 12; ++l) {
    ks.push_back(1L << l);
    ks.push_back(-(1L << l));
  }
  for (long k : ks) {
    for (const auto& s : pell_like_solutions(8, k, bound)) {
      o.require(!s.primitive, "primitive at k=" + std::to_string(k));
    }
  }
  for (long k : {-8L, -4L, 1L, 8L}) {
    auto s = pell_like_solutions(8, k, bound);
    o.require(!s.empty(), "none at k=" + std::to_string(k));
    for (const auto& p : s) o.require(p.primitive, "imprimitive at k=" + std::to_string(k));
  }
  return o;
}

Outcome families_vs_oracle() {
  Outcome o;
  const long last = 10000;
  std::set<Integer> fam;
  for (const auto& t : cp_t_values(last)) {
    if (t >= 3 && t <= last) fam.insert(t);
  }
  std::set<Integer> found;
  for (const auto& [t, x] :
       brute_force_integral_points(rank_two_checker().division_polys()[0].poly, 3, last, 0)) {
    found.insert(t);
  }
  o.require(fam == found, "sets differ");
  o.note = o.ok ? std::to_string(fam.size()) + " values" : o.note;
  return o;
}

Outcome one_mod_four() {
  Outcome o;
  for (long t0 = 5; t0 <= 401; t0 += 4) {
    o.require(family_criterion(t0).injective, "criterion at " + std::to_string(t0));
    o.require(rank_two_checker().check(Rational(t0)).verdict == Verdict::CertifiedInjective,
              "check at " + std::to_string(t0));
  }
  return o;
}

Outcome rank_four_example() {
  Outcome o;
  const auto& c = rank_four_checker();
  std::string k;
  o.require(matches_display(c.division_polys()[0],
                            "x^4 - 4x^3t + 2x^2t^2 + 4xt^3 + t^4 - 12x^3 - 68xt^2 - 40t^3"
                            " + 54x^2 - 276xt - 258t^2 - 396x - 936t - 351",
                            &k),
            "d_P");
  o.require(matches_display(c.division_polys()[1],
                            "x^4 + 2x^2t^2 + t^4 - 36x^3 - 44xt^2 + 54x^2 - 384xt - 306t^2"
                            " + 252x - 1728t - 2511",
                            &k),
            "d_Q");
  o.require(matches_display(c.division_polys()[2],
                            "x^4 + 4x^3t + 2x^2t^2 - 4xt^3 + t^4 + 12x^3 - 92xt^2 + 40t^3"
                            " + 54x^2 - 492xt + 366t^2 - 1044x + 936t + 1809",
                            &k),
            "d_P+Q");
  o.require(matches_display(c.psi_squared(), "x^3 - (t^2+27)x + 10t^2+48t+90", &k), "g");
  using L = std::vector<std::pair<long, long>>;
  const std::vector<L> points{{{-11, 6}, {-12, 9}, {9, -6}, {44, 1}},
                              {{-5, 8}, {-3, 0}, {9, 36}, {-1, -4}},
                              {{-19, -6}, {-26, 1}, {9, 6}, {6, 9}}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& [t, x] : points[i]) {
      o.require(eval(c.division_polys()[i].poly, Rational(t), Rational(x)).is_zero(),
                "point (" + std::to_string(t) + "," + std::to_string(x) + ")");
    }
  }
  for (long t0 : {0L, 1L, 2L, 10L, 30L}) {
    bool listed = rank_four_criterion(Rational(t0)).injective;
    bool direct = c.check(Rational(t0)).verdict == Verdict::CertifiedInjective;
    o.require(listed == direct, "disagree at " + std::to_string(t0));
  }
  return o;
}

Outcome formula_vs_smul() {
  Outcome o;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-6, 6);
  std::uniform_int_distribution<int> m(-3, 3);
  int curves = 0;
  int points = 0;
  while (curves < 5) {
    Rational x1(c(rng)), y1(c(rng)), x2(c(rng)), y2(c(rng));
    if (x1 == x2 || y1.is_zero() || y2.is_zero()) continue;
    Rational a = ((y1 * y1 - x1 * x1 * x1) - (y2 * y2 - x2 * x2 * x2)) / (x1 - x2);
    Rational b = y1 * y1 - x1 * x1 * x1 - a * x1;
    if ((Rational(4) * a * a * a + Rational(27) * b * b).is_zero()) continue;
    RationalCurve e(a, b);
    auto p = e.point(x1, y1);
    auto q = e.point(x2, y2);
    DivisionTower<Rational> tower(e);
    int here = 0;
    int attempts = 0;
    while (here < 5 && attempts < 200) {
      ++attempts;
      auto r = e.add(e.smul(m(rng), p), e.smul(m(rng), q));
      if (r.is_infinity()) continue;
      bool good = true;
      for (int n = 2; n <= 5; ++n) good = good && !division_triple(tower, n).psi_sq(r.x()).is_zero();
      if (!good) continue;
      for (int n = 2; n <= 5; ++n) {
        o.require(mult_by_n_formula(e, division_triple(tower, n), r) == e.smul(n, r),
                  "mismatch");
      }
      ++here;
    }
    if (here < 5) continue;
    ++curves;
    points += here;
  }
  o.note = std::to_string(points) + " points on " + std::to_string(curves) + " curves";
  return o;
}

Outcome scan_density(std::string* line) {
  Outcome o;
  ScanSummary s = scan(rank_two_checker(), 3, 1000, 0);
  *line = s.summary_line();
  o.require(s.fraction() >= Rational(3, 5), "fraction below 0.6");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> body;
  };
  std::string constant;
  std::string summary;
  const std::vector<Criterion> criteria{
      {1, "division-polynomial goldens", 1, division_goldens},
      {2, "two-torsion counterexample", 1, two_torsion_counterexample},
      {3, "rank-two surface certified at t0=5", 1, certified_at_five},
      {4, "rank-two surface witness at t0=27", 1, witness_at_twenty_seven},
      {5, "rank-two polynomial quadruple", 0,
       [&] {
         Outcome o = rank_two_displays(&constant);
         if (o.ok) o.note = "g constant=" + constant;
         return o;
       }},
      {6, "integral points on C_Q, C_2, C_P+Q", 10, integral_points},
      {7, "Pell-like lemmas", 30, pell_lemmas},
      {8, "family values vs integral-point oracle", 300, families_vs_oracle},
      {9, "t0 = 1 mod 4 certified", 120, one_mod_four},
      {10, "rank-four example", 10, rank_four_example},
      {11, "multiplication formula vs double-and-add", 0, formula_vs_smul},
      {12, "scan density on 3..1000", 600,
       [&] {
         Outcome o = scan_density(&summary);
         o.note = o.ok ? summary : o.note + " (" + summary + ")";
         return o;
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit_s > 0 && secs > c.limit_s) {
      o.ok = false;
      o.note = "time limit exceeded";
    }
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << " [" << secs << "s]";
    if (!o.note.empty()) line << " " << o.note;
    std::cout << line.str() << std::endl;
    if (!o.ok) ++failures;
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
