#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ellspec/arith/bipoly.hpp"
#include "ellspec/arith/roots.hpp"
#include "ellspec/curves/curve.hpp"
#include "ellspec/curves/torsion.hpp"
#include "ellspec/divpoly/division.hpp"

namespace ellspec {

enum class Verdict { CertifiedInjective, Inconclusive, BadParameter };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedInjective:
      return "CertifiedInjective";
    case Verdict::Inconclusive:
      return "Inconclusive";
    case Verdict::BadParameter:
      return "BadParameter";
  }
  return "?";
}

/// Why a parameter value is excluded. `PointPole` covers a coordinate pole
/// of a coset representative or an asserted torsion point.
enum class ExclusionReason { PoleOfA, PoleOfB, DiscriminantZero, RootFunctionPole, PointPole };

inline std::string to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::PoleOfA:
      return "pole-of-A";
    case ExclusionReason::PoleOfB:
      return "pole-of-B";
    case ExclusionReason::DiscriminantZero:
      return "discriminant-zero";
    case ExclusionReason::RootFunctionPole:
      return "root-function-pole";
    case ExclusionReason::PointPole:
      return "point-pole";
  }
  return "?";
}

class BadParameterError : public std::domain_error {
 public:
  BadParameterError(ExclusionReason reason, const Rational& t0)
      : std::domain_error("bad parameter t0=" + t0.str() + ": " + to_string(reason)),
        reason_(reason) {}
  ExclusionReason reason() const { return reason_; }

 private:
  ExclusionReason reason_;
};

/// E_{t0}; throws BadParameterError on a pole of A or B or a singular fibre.
inline RationalCurve specialize_curve(const FunctionCurve& e, const Rational& t0) {
  auto a = e.a().try_eval(t0);
  if (!a) throw BadParameterError(ExclusionReason::PoleOfA, t0);
  auto b = e.b().try_eval(t0);
  if (!b) throw BadParameterError(ExclusionReason::PoleOfB, t0);
  if ((Rational(4) * *a * *a * *a + Rational(27) * *b * *b).is_zero()) {
    throw BadParameterError(ExclusionReason::DiscriminantZero, t0);
  }
  return RationalCurve(*a, *b);
}

/// Coordinatewise evaluation onto an already specialized curve.
inline RationalPoint specialize_point(const RationalCurve& e0, const FunctionPoint& p,
                                      const Rational& t0) {
  if (p.is_infinity()) return RationalPoint::infinity();
  auto x = p.x().try_eval(t0);
  auto y = p.y().try_eval(t0);
  if (!x || !y) throw BadParameterError(ExclusionReason::PointPole, t0);
  return e0.point(*x, *y);
}

inline RationalPoint specialize_point(const FunctionCurve& e, const FunctionPoint& p,
                                      const Rational& t0) {
  return specialize_point(specialize_curve(e, t0), p, t0);
}

/// The declared subgroup M. Independence of the generators and the
/// saturation hypotheses are the caller's assertions; they are echoed in
/// every report and never checked.
struct SubgroupSpec {
  std::vector<FunctionPoint> generators;
  std::vector<FunctionPoint> asserted_torsion;  // nonzero torsion points; empty = trivial
  bool saturation_asserted = false;
};

inline void validate(const FunctionCurve& e, const SubgroupSpec& m) {
  if (m.generators.empty()) throw std::invalid_argument("subgroup needs at least one generator");
  for (const auto& g : m.generators) {
    if (g.is_infinity() || !e.contains(g)) {
      throw std::invalid_argument("generator is not an affine point of the curve");
    }
  }
  for (const auto& p : m.asserted_torsion) {
    if (p.is_infinity() || !e.contains(p)) {
      throw std::invalid_argument("asserted torsion point is not an affine point of the curve");
    }
  }
}

/// Sums c_1 g_1 + ... + c_r g_r over nonzero (c_i) in [0, n)^r, c_1 varying
/// fastest. A representative with y = 0 is shifted by n g_1.
inline std::vector<FunctionPoint> coset_representatives(const SubgroupSpec& m,
                                                        const FunctionCurve& e, int n) {
  if (n < 2) throw std::invalid_argument("coset representatives need n >= 2");
  validate(e, m);
  const std::size_t r = m.generators.size();
  std::vector<std::vector<FunctionPoint>> multiples(r);
  for (std::size_t i = 0; i < r; ++i) {
    FunctionPoint acc;
    for (int k = 0; k < n; ++k) {
      multiples[i].push_back(acc);
      acc = e.add(acc, m.generators[i]);
    }
  }
  std::vector<FunctionPoint> out;
  std::vector<int> c(r, 0);
  while (true) {
    std::size_t i = 0;
    while (i < r && ++c[i] == n) c[i++] = 0;
    if (i == r) break;
    FunctionPoint s;
    for (std::size_t j = 0; j < r; ++j) s = e.add(s, multiples[j][c[j]]);
    if (s.is_infinity()) throw std::invalid_argument("generators are not independent mod n");
    if (is_zero(s.y())) s = e.add(s, e.smul(n, m.generators[0]));
    out.push_back(std::move(s));
  }
  return out;
}

struct ExcludedPoint {
  Rational t0;
  ExclusionReason reason;
};

class ExcludedSet {
 public:
  void add(const Rational& t0, ExclusionReason reason) { tags_[t0].insert(reason); }
  void add_roots(const UniPoly& p, ExclusionReason reason) {
    if (p.degree() < 1) return;
    for (const auto& r : rational_roots(p)) add(r.value, reason);
  }

  bool contains(const Rational& t0) const { return tags_.count(t0) > 0; }
  bool empty() const { return tags_.empty(); }

  std::vector<ExclusionReason> reasons_for(const Rational& t0) const {
    auto it = tags_.find(t0);
    if (it == tags_.end()) return {};
    return {it->second.begin(), it->second.end()};
  }

  /// Sorted by parameter, then reason.
  std::vector<ExcludedPoint> points() const {
    std::vector<ExcludedPoint> out;
    for (const auto& [t0, reasons] : tags_) {
      for (auto r : reasons) out.push_back({t0, r});
    }
    return out;
  }

 private:
  std::map<Rational, std::set<ExclusionReason>> tags_;
};

/// A point found on E_{t0}: a Q with nQ equal to a specialized
/// representative, or a new rational n-torsion point.
struct Witness {
  enum class Kind { Division, Torsion };
  Kind kind = Kind::Division;
  int n = 0;
  RationalPoint point;
  RationalPoint target;  // the representative for Division; O for Torsion

  std::string str() const {
    if (kind == Kind::Torsion) return "torsion" + render(point);
    return std::to_string(n) + "*" + render(point) + "=" + render(target);
  }
};

struct DivisionEvidence {
  FunctionPoint representative;
  RationalPoint specialized;
  UniPoly polynomial;  // d_{n,P}(t0, x) up to a nonzero constant
  std::vector<Rational> roots;
  std::vector<RationalPoint> lifts;  // Q with nQ = P_{t0}
  bool holds = true;
};

struct TorsionRootCheck {
  Rational x;
  Rational rhs;
  bool square = false;
};

struct TorsionEvidence {
  UniPoly polynomial;  // psi_n^2(t0, x) up to a nonzero constant
  std::vector<TorsionRootCheck> roots;
  std::vector<RationalPoint> found;     // rational nonzero n-torsion of E_{t0}
  std::vector<RationalPoint> expected;  // image of the asserted n-torsion
  std::vector<RationalPoint> new_points;
  std::vector<BiPoly> f_polys;  // x^2 - (r^3 + A r + B), cleared, per non-point root r
  bool holds = true;
};

struct Assumptions {
  bool independence_asserted = true;
  bool saturation_asserted = false;
  std::size_t asserted_torsion_points = 0;
};

struct InjectivityReport {
  Rational t0;
  int n = 2;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> reasons;
  std::vector<DivisionEvidence> condition2;
  std::optional<TorsionEvidence> condition3;
  Assumptions assumptions;
  std::vector<Witness> witnesses;
};

/// One-line record: t0, n, verdict, reasons, witnesses, saturation.
inline std::string to_record(const InjectivityReport& r) {
  std::string out = "t0=" + r.t0.str() + " n=" + std::to_string(r.n) +
                    " verdict=" + to_string(r.verdict) + " reasons=";
  if (r.reasons.empty()) {
    out += "-";
  } else {
    for (std::size_t i = 0; i < r.reasons.size(); ++i) {
      if (i > 0) out += ",";
      out += r.reasons[i];
    }
  }
  out += " witnesses=[";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    if (i > 0) out += ";";
    out += r.witnesses[i].str();
  }
  out += "] saturation=";
  out += r.assumptions.saturation_asserted ? "asserted" : "unasserted";
  return out;
}

/// Precomputes everything about (E, M, n) that does not depend on t0, then
/// certifies single parameters. Safe to share across threads.
class InjectivityChecker {
 public:
  InjectivityChecker(FunctionCurve e, SubgroupSpec m, int n = 2)
      : e_(std::move(e)), m_(std::move(m)), n_(n) {
    reps_ = coset_representatives(m_, e_, n_);
    DivisionTower<RatFn> tower(e_);
    const auto triple = division_triple(tower, n_, std::max(n_, kDefaultMaxDivisionIndex));
    for (const auto& rep : reps_) {
      d_.push_back(clear_denominators(division_poly_of_point(triple, rep)));
    }
    psi_sq_ = clear_denominators(triple.psi_sq);
    psi_roots_ = qt_roots(psi_sq_.poly);
    for (const auto& r : psi_roots_) {
      RatFn v = e_.rhs(r);
      if (!is_square_in_qt(v)) {
        f_polys_.push_back(clear_denominators(RatFnPoly(std::vector<RatFn>{-v, RatFn(0), RatFn(1)})).poly);
      }
    }
    for (const auto& p : m_.asserted_torsion) {
      if (e_.smul(n_, p).is_infinity()) torsion_n_.push_back(p);
    }
    build_excluded();
  }

  const FunctionCurve& curve() const { return e_; }
  const SubgroupSpec& subgroup() const { return m_; }
  int n() const { return n_; }
  const std::vector<FunctionPoint>& representatives() const { return reps_; }
  const std::vector<ClearedPoly>& division_polys() const { return d_; }
  const ClearedPoly& psi_squared() const { return psi_sq_; }
  const std::vector<RatFn>& psi_roots() const { return psi_roots_; }
  const std::vector<BiPoly>& f_polys() const { return f_polys_; }
  const ExcludedSet& excluded() const { return excluded_; }

  InjectivityReport check(const Rational& t0) const {
    InjectivityReport report;
    report.t0 = t0;
    report.n = n_;
    report.assumptions = {true, m_.saturation_asserted, m_.asserted_torsion.size()};
    if (excluded_.contains(t0)) {
      report.verdict = Verdict::BadParameter;
      for (auto r : excluded_.reasons_for(t0)) report.reasons.push_back(to_string(r));
      return report;
    }
    try {
      const RationalCurve e0 = specialize_curve(e_, t0);
      std::optional<DivisionTriple<Rational>> direct;
      auto direct_triple = [&]() -> const DivisionTriple<Rational>& {
        if (!direct) direct = division_triple(e0, n_, std::max(n_, kDefaultMaxDivisionIndex));
        return *direct;
      };

      bool cond2 = true;
      for (std::size_t i = 0; i < reps_.size(); ++i) {
        DivisionEvidence ev;
        ev.representative = reps_[i];
        ev.specialized = specialize_point(e0, reps_[i], t0);
        ev.polynomial = specialize_cleared(d_[i], t0, [&] {
          return division_poly_of_point(direct_triple(), ev.specialized);
        });
        for (const auto& r : rational_roots(ev.polynomial)) {
          ev.roots.push_back(r.value);
          for (const auto& q : lift_x(e0, r.value)) {
            if (e0.smul(n_, q) == ev.specialized) {
              ev.lifts.push_back(q);
              report.witnesses.push_back({Witness::Kind::Division, n_, q, ev.specialized});
            }
          }
        }
        ev.holds = ev.lifts.empty();
        cond2 = cond2 && ev.holds;
        report.condition2.push_back(std::move(ev));
      }

      TorsionEvidence tv;
      tv.f_polys = f_polys_;
      tv.polynomial = specialize_cleared(psi_sq_, t0, [&] { return direct_triple().psi_sq; });
      std::set<RationalPoint> found;
      for (const auto& r : rational_roots(tv.polynomial)) {
        Rational rhs = e0.rhs(r.value);
        tv.roots.push_back({r.value, rhs, is_square(rhs).has_value()});
        for (const auto& q : lift_x(e0, r.value)) {
          if (e0.smul(n_, q).is_infinity()) found.insert(q);
        }
      }
      std::set<RationalPoint> expected;
      for (const auto& p : torsion_n_) expected.insert(specialize_point(e0, p, t0));
      tv.found.assign(found.begin(), found.end());
      tv.expected.assign(expected.begin(), expected.end());
      for (const auto& q : found) {
        if (!expected.count(q)) {
          tv.new_points.push_back(q);
          report.witnesses.push_back({Witness::Kind::Torsion, n_, q, RationalPoint::infinity()});
        }
      }
      tv.holds = found == expected;
      report.condition3 = std::move(tv);

      if (!cond2) report.reasons.push_back("condition2");
      if (!report.condition3->holds) report.reasons.push_back("condition3");
      report.verdict = report.reasons.empty() ? Verdict::CertifiedInjective : Verdict::Inconclusive;
    } catch (const BadParameterError& err) {
      report.verdict = Verdict::BadParameter;
      report.reasons = {to_string(err.reason())};
      report.condition2.clear();
      report.condition3.reset();
      report.witnesses.clear();
    }
    return report;
  }

 private:
  static bool is_square_in_qt(const RatFn& v) {
    if (v.is_zero()) return true;
    RatFnPoly f(std::vector<RatFn>{-v, RatFn(0), RatFn(1)});
    return !qt_roots(clear_denominators(f).poly).empty();
  }

  // The cleared polynomial at t0 when its scaling unit is a nonzero
  // constant there; otherwise the polynomial recomputed on E_{t0}.
  template <class Direct>
  static UniPoly specialize_cleared(const ClearedPoly& c, const Rational& t0, Direct direct) {
    auto u = c.unit.try_eval(t0);
    if (u && !u->is_zero()) return specialize_poly(c.poly, t0).poly;
    return direct();
  }

  void build_excluded() {
    excluded_.add_roots(e_.a().den(), ExclusionReason::PoleOfA);
    excluded_.add_roots(e_.b().den(), ExclusionReason::PoleOfB);
    RatFn disc = RatFn(4) * e_.a() * e_.a() * e_.a() + RatFn(27) * e_.b() * e_.b();
    excluded_.add_roots(disc.num(), ExclusionReason::DiscriminantZero);
    for (const auto& r : psi_roots_) excluded_.add_roots(r.den(), ExclusionReason::RootFunctionPole);
    auto point_poles = [&](const FunctionPoint& p) {
      excluded_.add_roots(p.x().den(), ExclusionReason::PointPole);
      excluded_.add_roots(p.y().den(), ExclusionReason::PointPole);
    };
    for (const auto& p : reps_) point_poles(p);
    for (const auto& p : torsion_n_) point_poles(p);
  }

  FunctionCurve e_;
  SubgroupSpec m_;
  int n_;
  std::vector<FunctionPoint> reps_;
  std::vector<ClearedPoly> d_;
  ClearedPoly psi_sq_;
  std::vector<RatFn> psi_roots_;
  std::vector<BiPoly> f_polys_;
  std::vector<FunctionPoint> torsion_n_;
  ExcludedSet excluded_;
};

inline ExcludedSet excluded_parameters(const FunctionCurve& e, const SubgroupSpec& m, int n) {
  return InjectivityChecker(e, m, n).excluded();
}

inline InjectivityReport check_injectivity(const FunctionCurve& e, const SubgroupSpec& m,
                                           const Rational& t0, int n = 2) {
  return InjectivityChecker(e, m, n).check(t0);
}

/// Outcome of specializing at a few parameters to bound E(Q(t))_tors.
/// Specialization is injective on torsion, so every observed order is a
/// multiple of the true one; `order_bound` is their gcd.
struct TorsionProbe {
  bool trivial = false;
  std::optional<Rational> proof_at;  // a t0 with trivial E_{t0}(Q)_tors
  std::uint64_t order_bound = 0;
  std::vector<std::pair<Rational, std::size_t>> observed;
};

inline TorsionProbe probe_torsion(const FunctionCurve& e, const std::vector<Rational>& probes) {
  TorsionProbe out;
  for (const auto& t0 : probes) {
    std::optional<RationalCurve> e0;
    try {
      e0 = specialize_curve(e, t0);
    } catch (const BadParameterError&) {
      continue;
    }
    std::size_t size = torsion_subgroup_overQ(*e0).size();
    out.observed.emplace_back(t0, size);
    out.order_bound = std::gcd(out.order_bound, static_cast<std::uint64_t>(size));
    if (size == 1 && !out.trivial) {
      out.trivial = true;
      out.proof_at = t0;
    }
  }
  if (out.observed.empty()) throw std::invalid_argument("every torsion probe is a bad parameter");
  return out;
}

struct ScanSummary {
  long long first = 0;
  long long last = -1;
  std::vector<InjectivityReport> reports;  // ordered by t0
  std::size_t certified = 0;

  std::size_t total() const { return reports.size(); }
  Rational fraction() const {
    if (reports.empty()) return Rational(0);
    return Rational(Integer(static_cast<unsigned long>(certified)),
                    Integer(static_cast<unsigned long>(reports.size())));
  }
  std::string summary_line() const {
    return "scan range=" + std::to_string(first) + ".." + std::to_string(last) +
           " certified=" + std::to_string(certified) + " total=" + std::to_string(total()) +
           " fraction=" + fraction().str();
  }
};

/// check() for every integer in [first, last]; workers pull indices from a
/// shared counter and write into fixed slots, so output order is t0 order.
inline ScanSummary scan(const InjectivityChecker& checker, long long first, long long last,
                        unsigned threads = 0) {
  ScanSummary out;
  out.first = first;
  out.last = last;
  if (last < first) return out;
  const auto count = static_cast<std::size_t>(last - first + 1);
  out.reports.resize(count);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      out.reports[i] = checker.check(Rational(Integer(static_cast<long>(first + static_cast<long long>(i)))));
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& r : out.reports) {
    if (r.verdict == Verdict::CertifiedInjective) ++out.certified;
  }
  return out;
}

inline ScanSummary scan(const FunctionCurve& e, const SubgroupSpec& m, long long first,
                        long long last, int n = 2, unsigned threads = 0) {
  return scan(InjectivityChecker(e, m, n), first, last, threads);
}

}  // namespace ellspec
