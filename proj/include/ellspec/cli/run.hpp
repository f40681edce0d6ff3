#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ellspec/cli/parser.hpp"
#include "ellspec/pell/pell.hpp"
#include "ellspec/presets.hpp"
#include "ellspec/specialization/injectivity.hpp"
#include "json.hpp"

namespace ellspec::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInconclusive = 2, kBadParameter = 3 };

struct JobConfig {
  std::string command;
  std::optional<std::string> curve_a;
  std::optional<std::string> curve_b;
  std::vector<std::string> gens;  // "x:y"
  int n = 2;
  std::optional<std::string> t0;
  std::optional<std::pair<long long, long long>> range;
  std::optional<long long> bound;
  std::optional<std::string> poly;  // bivariate, for `oracle`
  long long d = 8;                  // for `pell`
  std::optional<long long> k;
  bool json = false;
  bool assert_saturated = false;
  unsigned threads = 0;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "a..b" with optional signs.
inline std::pair<long long, long long> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw UsageError("range must look like a..b: " + s);
  try {
    std::size_t used = 0;
    long long a = std::stoll(s.substr(0, dots), &used);
    if (used != dots) throw UsageError("bad range start: " + s);
    std::string rest = s.substr(dots + 2);
    long long b = std::stoll(rest, &used);
    if (used != rest.size()) throw UsageError("bad range end: " + s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("bad range: " + s);
  }
}

using ordered_json = nlohmann::ordered_json;

inline ordered_json point_json(const RationalPoint& p) {
  if (p.is_infinity()) return "O";
  return ordered_json::array({p.x().str(), p.y().str()});
}

inline ordered_json report_json(const InjectivityReport& r) {
  ordered_json j;
  j["t0"] = r.t0.str();
  j["n"] = r.n;
  j["verdict"] = to_string(r.verdict);
  j["reasons"] = r.reasons;
  ordered_json c2 = ordered_json::array();
  for (const auto& ev : r.condition2) {
    ordered_json e;
    e["representative"] = {ev.representative.x().str(), ev.representative.y().str()};
    e["specialized"] = point_json(ev.specialized);
    e["polynomial"] = to_string(ev.polynomial, "x");
    ordered_json roots = ordered_json::array();
    for (const auto& x : ev.roots) roots.push_back(x.str());
    e["roots"] = roots;
    ordered_json lifts = ordered_json::array();
    for (const auto& q : ev.lifts) lifts.push_back(point_json(q));
    e["lifts"] = lifts;
    e["holds"] = ev.holds;
    c2.push_back(e);
  }
  j["condition2"] = c2;
  if (r.condition3) {
    const auto& tv = *r.condition3;
    ordered_json c3;
    c3["polynomial"] = to_string(tv.polynomial, "x");
    ordered_json roots = ordered_json::array();
    for (const auto& rc : tv.roots) {
      roots.push_back({{"x", rc.x.str()}, {"rhs", rc.rhs.str()}, {"square", rc.square}});
    }
    c3["roots"] = roots;
    ordered_json pts = ordered_json::array();
    for (const auto& q : tv.new_points) pts.push_back(point_json(q));
    c3["new_torsion"] = pts;
    ordered_json fs = ordered_json::array();
    for (const auto& f : tv.f_polys) fs.push_back(to_string(f));
    c3["f_polys"] = fs;
    c3["holds"] = tv.holds;
    j["condition3"] = c3;
  } else {
    j["condition3"] = nullptr;
  }
  ordered_json w = ordered_json::array();
  for (const auto& x : r.witnesses) w.push_back(x.str());
  j["witnesses"] = w;
  j["assumptions"] = {{"independence", "asserted"},
                      {"saturation", r.assumptions.saturation_asserted ? "asserted" : "unasserted"},
                      {"asserted_torsion_points", r.assumptions.asserted_torsion_points}};
  return j;
}

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::CertifiedInjective:
      return kOk;
    case Verdict::Inconclusive:
      return kInconclusive;
    case Verdict::BadParameter:
      return kBadParameter;
  }
  return kUsage;
}

namespace detail {

class Runner {
 public:
  Runner(const JobConfig& c, std::ostream& out) : c_(c), out_(out) {}

  int dispatch() {
    const std::string& cmd = c_.command;
    if (cmd == "check") return check(user_surface());
    if (cmd == "scan") return scan_cmd(user_surface());
    if (cmd == "excluded") return excluded();
    if (cmd == "divpoly") return divpoly();
    if (cmd == "division-points") return division_points();
    if (cmd == "pell") return pell();
    if (cmd == "cp-family") return cp_family();
    if (cmd == "oracle") return oracle();
    if (cmd == "example1") return example(presets::rank_two_surface(), "5", false);
    if (cmd == "example2") return example(presets::rank_four_surface(), "0", true);
    throw UsageError("unknown command '" + cmd + "'");
  }

 private:
  void emit(const ordered_json& j, const std::string& text) {
    if (c_.json) {
      out_ << j.dump() << "\n";
    } else {
      out_ << text << "\n";
    }
  }

  FunctionCurve user_curve() const {
    if (!c_.curve_a || !c_.curve_b) throw UsageError("--curve-a and --curve-b are required");
    try {
      return FunctionCurve(parse_rational_function(*c_.curve_a), parse_rational_function(*c_.curve_b));
    } catch (const CurveError& e) {
      throw UsageError(e.what());
    }
  }

  std::vector<FunctionPoint> user_points(const FunctionCurve& e) const {
    std::vector<FunctionPoint> out;
    for (const auto& g : c_.gens) {
      auto colon = g.find(':');
      if (colon == std::string::npos) throw UsageError("--gen must look like x:y, got " + g);
      RatFn x = parse_rational_function(g.substr(0, colon));
      RatFn y = parse_rational_function(g.substr(colon + 1));
      try {
        out.push_back(e.point(x, y));
      } catch (const CurveError&) {
        throw UsageError("generator " + g + " is not on the curve");
      }
    }
    return out;
  }

  presets::Surface user_surface() const {
    FunctionCurve e = user_curve();
    SubgroupSpec m{user_points(e), {}, c_.assert_saturated};
    if (m.generators.empty()) throw UsageError("at least one --gen is required");
    return {e, m};
  }

  Rational t0() const {
    if (!c_.t0) throw UsageError("--t0 is required");
    return parse_rational(*c_.t0);
  }

  std::pair<long long, long long> range() const {
    if (!c_.range) throw UsageError("--range is required");
    return *c_.range;
  }

  int check(const presets::Surface& s) {
    InjectivityChecker checker(s.curve, s.subgroup, c_.n);
    InjectivityReport r = checker.check(t0());
    emit(report_json(r), to_record(r));
    return exit_code(r.verdict);
  }

  int scan_cmd(const presets::Surface& s) {
    auto [a, b] = range();
    ScanSummary sum = scan(InjectivityChecker(s.curve, s.subgroup, c_.n), a, b, c_.threads);
    for (const auto& r : sum.reports) emit(report_json(r), to_record(r));
    emit({{"scan", std::to_string(a) + ".." + std::to_string(b)},
          {"certified", sum.certified},
          {"total", sum.total()},
          {"fraction", sum.fraction().str()}},
         sum.summary_line());
    return kOk;
  }

  int excluded() {
    auto s = user_surface();
    InjectivityChecker checker(s.curve, s.subgroup, c_.n);
    for (const auto& p : checker.excluded().points()) {
      emit({{"t0", p.t0.str()}, {"reason", to_string(p.reason)}},
           "excluded t0=" + p.t0.str() + " reason=" + to_string(p.reason));
    }
    return kOk;
  }

  int divpoly() {
    FunctionCurve e = user_curve();
    DivisionTower<RatFn> tower(e);
    auto triple = division_triple(tower, c_.n);
    auto print = [&](const std::string& name, const RatFnPoly& p, const std::string& extra) {
      ClearedPoly c = clear_denominators(p);
      emit({{"name", name}, {"n", c_.n}, {"poly", to_string(c.poly)}, {"unit", c.unit.str()}},
           name + " n=" + std::to_string(c_.n) + extra + " poly=" + to_string(c.poly) +
               " unit=" + c.unit.str());
    };
    print("psi_sq", triple.psi_sq, "");
    print("phi", triple.phi, "");
    for (const auto& p : user_points(e)) {
      print("d", division_poly_of_point(triple, p),
            " point=(" + p.x().str() + "," + p.y().str() + ")");
    }
    return kOk;
  }

  int division_points() {
    FunctionCurve e = user_curve();
    auto pts = user_points(e);
    if (pts.empty()) throw UsageError("--gen is required");
    Rational at = c_.t0 ? t0() : Rational(0);
    if (!c_.t0 && !(e.a().is_constant() && e.b().is_constant())) {
      throw UsageError("--t0 is required for a curve that depends on t");
    }
    RationalCurve e0 = specialize_curve(e, at);
    RationalPoint p0 = specialize_point(e0, pts.front(), at);
    if (p0.is_infinity()) throw UsageError("point specializes to infinity");
    for (const auto& q : n_division_points(e0, p0, c_.n)) {
      emit({{"n", c_.n}, {"point", point_json(q)}, {"target", point_json(p0)}},
           std::to_string(c_.n) + "*" + render(q) + "=" + render(p0));
    }
    return kOk;
  }

  int pell() {
    if (!c_.k) throw UsageError("--k is required");
    if (!c_.bound) throw UsageError("--bound is required");
    for (const auto& s : pell_like_solutions(Integer(static_cast<long>(c_.d)),
                                             Integer(static_cast<long>(*c_.k)),
                                             Integer(static_cast<long>(*c_.bound)))) {
      emit({{"u", s.u.get_str()}, {"v", s.v.get_str()}, {"k", s.k.get_str()},
            {"D", s.d.get_str()}, {"primitive", s.primitive}},
           "u=" + s.u.get_str() + " v=" + s.v.get_str() + " k=" + s.k.get_str() +
               " D=" + s.d.get_str() + " primitive=" + (s.primitive ? "true" : "false"));
    }
    return kOk;
  }

  int cp_family() {
    if (c_.t0) {
      Rational t = t0();
      if (!t.is_integer()) throw UsageError("cp-family needs an integer --t0");
      FamilyVerdict v = family_criterion(t.num());
      emit({{"t0", t.str()}, {"injective", v.injective}, {"reason", v.reason}},
           "t0=" + t.str() + " verdict=" + (v.injective ? "injective" : "not-certified") +
               " reason=" + v.reason);
      return v.injective ? kOk : kInconclusive;
    }
    if (!c_.bound) throw UsageError("cp-family needs --t0 or --bound");
    for (const auto& f : cp_family_terms(Integer(static_cast<long>(*c_.bound)))) {
      emit({{"family", f.family}, {"n", f.n}, {"u", f.u.get_str()}, {"v", f.v.get_str()},
            {"k", f.k.get_str()}, {"t0", f.t0.get_str()}},
           "family=" + std::to_string(f.family) + " n=" + std::to_string(f.n) +
               " u=" + f.u.get_str() + " v=" + f.v.get_str() + " k=" + f.k.get_str() +
               " t0=" + f.t0.get_str());
    }
    return kOk;
  }

  int oracle() {
    if (!c_.poly) throw UsageError("--poly is required");
    auto [a, b] = range();
    ClearedPoly p = parse_bivariate(*c_.poly);
    if (!is_monic_in_x(p.poly)) throw UsageError("oracle needs a polynomial monic in x");
    for (const auto& [t, x] : brute_force_integral_points(p.poly, static_cast<long>(a),
                                                          static_cast<long>(b),
                                                          std::max(1U, c_.threads))) {
      emit({{"t", t.get_str()}, {"x", x.get_str()}},
           "t=" + t.get_str() + " x=" + x.get_str());
    }
    return kOk;
  }

  int example(presets::Surface s, const std::string& default_t0, bool list_criterion) {
    s.subgroup.saturation_asserted = true;
    InjectivityChecker checker(s.curve, s.subgroup, c_.n);
    if (c_.range) {
      auto [a, b] = *c_.range;
      ScanSummary sum = scan(checker, a, b, c_.threads);
      for (const auto& r : sum.reports) emit(report_json(r), to_record(r));
      emit({{"scan", std::to_string(a) + ".." + std::to_string(b)},
            {"certified", sum.certified},
            {"total", sum.total()},
            {"fraction", sum.fraction().str()}},
           sum.summary_line());
      return kOk;
    }
    Rational at = parse_rational(c_.t0.value_or(default_t0));
    TorsionProbe probe = probe_torsion(s.curve, {at});
    emit({{"probe", at.str()},
          {"trivial_torsion", probe.trivial},
          {"order_bound", probe.order_bound}},
         "probe t0=" + at.str() + " trivial_torsion=" + (probe.trivial ? "true" : "false") +
             " order_bound=" + std::to_string(probe.order_bound));
    if (list_criterion) {
      auto v = rank_four_criterion(at);
      emit({{"t0", at.str()}, {"list_criterion", v.injective}, {"reason", v.reason}},
           "list-criterion t0=" + at.str() + " injective=" + (v.injective ? "true" : "false") +
               " reason=" + v.reason);
    }
    InjectivityReport r = checker.check(at);
    emit(report_json(r), to_record(r));
    return exit_code(r.verdict);
  }

  const JobConfig& c_;
  std::ostream& out_;
};

}  // namespace detail

/// Executes one command, writing records to `out` and diagnostics to
/// `err`. Returns the process exit status.
inline int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return detail::Runner(config, out).dispatch();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BadParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameter;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace ellspec::cli
