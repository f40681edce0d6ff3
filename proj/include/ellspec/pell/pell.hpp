#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ellspec/arith/bipoly.hpp"
#include "ellspec/arith/rational.hpp"
#include "ellspec/arith/roots.hpp"

namespace ellspec {

/// Minimal positive solution of x^2 - D y^2 = 1, from the continued
/// fraction of sqrt(D).
inline std::pair<Integer, Integer> pell_fundamental(const Integer& d) {
  if (d < 2) throw std::invalid_argument("pell_fundamental needs D >= 2");
  Integer a0 = sqrt(d);
  if (a0 * a0 == d) throw std::invalid_argument("pell_fundamental needs nonsquare D");
  Integer m = 0, q = 1, a = a0;
  Integer h_prev = 1, h = a0;
  Integer k_prev = 0, k = 1;
  while (h * h - d * k * k != 1) {
    m = q * a - m;
    q = (d - m * m) / q;
    a = (a0 + m) / q;
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    h_prev = std::exchange(h, h_next);
    k_prev = std::exchange(k, k_next);
  }
  return {h, k};
}

struct PellSolution {
  Integer u;
  Integer v;
  Integer k;
  Integer d;
  bool primitive = false;

  friend bool operator==(const PellSolution& a, const PellSolution& b) {
    return a.u == b.u && a.v == b.v && a.k == b.k && a.d == b.d;
  }
};

/// Every (u, v) with u^2 - D v^2 = k and 0 <= u <= bound, both signs of v.
///
/// Each solution class has a member with u <= sqrt(|k| x1); those are found
/// by direct search and then moved through their orbit under the
/// fundamental unit in both directions.
inline std::vector<PellSolution> pell_like_solutions(const Integer& d, const Integer& k,
                                                     const Integer& bound) {
  if (k == 0) throw std::invalid_argument("pell_like_solutions needs k != 0");
  const auto [x1, y1] = pell_fundamental(d);
  const Integer abs_k = abs(k);
  const Integer search = sqrt(abs_k * x1);

  std::set<std::pair<Integer, Integer>> reps;
  for (Integer u = 0; u <= search; ++u) {
    Integer num = u * u - k;
    if (num < 0 || num % d != 0) continue;
    Integer v2 = num / d;
    Integer v = sqrt(v2);
    if (v * v != v2) continue;
    reps.insert({u, v});
    reps.insert({u, -v});
  }

  std::set<std::pair<Integer, Integer>> found;
  auto keep = [&](Integer u, Integer v) {
    if (u < 0) {
      u = -u;
      v = -v;
    }
    if (u <= bound) found.insert({u, v});
  };
  for (const auto& [u0, v0] : reps) {
    for (int dir : {1, -1}) {
      Integer u = u0, v = v0;
      Integer prev = -1;
      // |u| along an orbit falls then rises; stop once it rises past bound.
      while (true) {
        keep(u, v);
        Integer au = abs(u);
        if (au > bound && au >= prev) break;
        prev = au;
        const Integer y = dir * y1;
        Integer nu = u * x1 + d * v * y;
        Integer nv = u * y + v * x1;
        u = std::move(nu);
        v = std::move(nv);
      }
    }
  }

  std::vector<PellSolution> out;
  for (const auto& [u, v] : found) {
    out.push_back({u, v, k, d, integer_gcd(u, v) == 1});
  }
  return out;
}

/// One member of the four exceptional families for y^2 = x^3 - t^2 x + t^2.
///
/// With (1 + sqrt 2)^m = a + b sqrt 2, family i takes
///   1: m = 2n,   (u, v) = (a, b/2),  u^2 - 8v^2 = 1,   t0 = 64 (u v^3 + 3 v^4)
///   2: m = 2n+1, (u, v) = (2a, b),   u^2 - 8v^2 = -4,  t0 = 4 (u v^3 + 3 v^4)
///   3: m = 2n+1, (u, v) = (4b, a),   u^2 - 8v^2 = 8,   t0 = u v^3 + 3 v^4
///   4: m = 2n,   (u, v) = (4b, a),   u^2 - 8v^2 = -8,  t0 = u v^3 + 3 v^4
/// t0 is unchanged by (u, v) -> (-u, -v), so no sign normalization is needed.
struct FamilyTerm {
  int family = 1;
  long n = 0;
  Integer u;
  Integer v;
  Integer k;
  Integer t0;
};

namespace detail {

/// (a, b) with (1 + sqrt 2)^m = a + b sqrt 2, any integer m.
inline std::pair<Integer, Integer> unit_power(long m) {
  Integer a = 1, b = 0;
  for (long i = 0; i < (m < 0 ? -m : m); ++i) {
    if (m > 0) {
      std::tie(a, b) = std::make_pair(Integer(a + 2 * b), Integer(a + b));
    } else {
      std::tie(a, b) = std::make_pair(Integer(-a + 2 * b), Integer(a - b));
    }
  }
  return {a, b};
}

inline Integer family_scale(int family) {
  static const std::array<long, 4> scale{64, 4, 1, 1};
  return scale.at(static_cast<std::size_t>(family - 1));
}

}  // namespace detail

inline FamilyTerm family_term(int family, long n) {
  if (family < 1 || family > 4) throw std::invalid_argument("family index must be 1..4");
  const bool odd = family == 2 || family == 3;
  auto [a, b] = detail::unit_power(odd ? 2 * n + 1 : 2 * n);
  FamilyTerm f;
  f.family = family;
  f.n = n;
  switch (family) {
    case 1:
      f.u = a;
      f.v = b / 2;
      f.k = 1;
      break;
    case 2:
      f.u = 2 * a;
      f.v = b;
      f.k = -4;
      break;
    case 3:
      f.u = 4 * b;
      f.v = a;
      f.k = 8;
      break;
    default:
      f.u = 4 * b;
      f.v = a;
      f.k = -8;
      break;
  }
  Integer v3 = f.v * f.v * f.v;
  f.t0 = detail::family_scale(family) * (f.u * v3 + 3 * v3 * f.v);
  return f;
}

/// All family terms with |t0| <= t_bound.
///
/// |u + 3v| >= (3 - 2 sqrt 2)|v| - sqrt|k| > |v|/6 - 3, and |v| never
/// shrinks as |n| grows, so a direction ends once scale |v|^3 (|v|/6 - 3)
/// exceeds the bound.
inline std::vector<FamilyTerm> cp_family_terms(const Integer& t_bound) {
  if (t_bound < 1) throw std::invalid_argument("cp_t_values needs t_bound >= 1");
  std::vector<FamilyTerm> out;
  for (int family = 1; family <= 4; ++family) {
    const Integer scale = detail::family_scale(family);
    for (int dir : {1, -1}) {
      for (long step = (dir == 1 ? 0 : 1);; ++step) {
        FamilyTerm f = family_term(family, dir * step);
        if (abs(f.t0) <= t_bound) out.push_back(f);
        Integer av = abs(f.v);
        Integer floor_bound = scale * av * av * av * (av - 18);  // 6 * the lower bound
        if (av > 18 && floor_bound > 6 * t_bound) break;
      }
    }
  }
  return out;
}

inline std::vector<Integer> cp_t_values(const Integer& t_bound) {
  std::set<Integer> values;
  for (const auto& f : cp_family_terms(t_bound)) values.insert(f.t0);
  return {values.begin(), values.end()};
}

struct FamilyVerdict {
  bool injective = false;
  std::string reason;
};

/// Injectivity of the specialization of y^2 = x^3 - t^2 x + t^2 at an
/// integer t0 via the family classification; t0 = 1 mod 4 is decided first.
inline FamilyVerdict family_criterion(const Integer& t0) {
  if (t0 > 1 && t0 % 4 == 1) return {true, "t0=1mod4"};
  if (t0 <= 2) return {false, "t0<=2"};
  for (const auto& f : cp_family_terms(t0)) {
    if (f.t0 == t0) {
      return {false, "family" + std::to_string(f.family) + ",n=" + std::to_string(f.n)};
    }
  }
  return {true, "not-a-family-value"};
}

/// All integer (t, x) with p(t, x) = 0 and first <= t <= last.
inline std::vector<std::pair<Integer, Integer>> brute_force_integral_points(
    const BiPoly& p, long first, long last, unsigned threads = 1) {
  if (!is_monic_in_x(p)) throw std::invalid_argument("brute_force_integral_points needs monic p");
  if (last < first) return {};
  const auto count = static_cast<std::size_t>(last - first + 1);
  std::vector<std::vector<Integer>> per_t(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      Rational t0(Integer(first + static_cast<long>(i)));
      for (const auto& r : rational_roots(specialize_poly(p, t0).poly)) {
        if (r.value.is_integer()) per_t[i].push_back(r.value.num());
      }
    }
  };
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  std::vector<std::pair<Integer, Integer>> out;
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& x : per_t[i]) out.emplace_back(Integer(first + static_cast<long>(i)), x);
  }
  return out;
}

struct ParameterizationSample {
  Integer u;
  Integer v;
  Integer k;  // u^2 - 8 v^2
  Rational t0;
  Rational x0;
  bool on_curve = false;
};

struct ParameterizationCheck {
  bool ok = false;
  BiPoly residual;  // in Q[u][v]; zero when the identity holds
  std::vector<ParameterizationSample> samples;
};

namespace detail {

/// Homogeneous quartic in (u, v) as an element of Q[u][v].
inline BiPoly uv_poly(std::initializer_list<std::pair<std::pair<int, int>, long>> terms) {
  BiPoly out;
  for (const auto& [exps, c] : terms) {
    UniPoly coeff = UniPoly::monomial(Rational(c), exps.first);
    out += BiPoly::monomial(coeff, exps.second);
  }
  return out;
}

}  // namespace detail

/// Checks that (t : x : z) = (p : q : (u^2 - 8v^2)^2) with
/// p = 16(4uv^3 + 12v^4), q = 16(2u^2v^2 + 10uv^3 + 12v^4) kills the
/// homogenized quartic x^4 - 4tx^3 + 2t^2x^2 + 4t^3x + t^4 - 8t^2xz - 4t^3z
/// identically, and evaluates t0 = p / k^2, x0 = q / k^2 at sample solutions.
inline ParameterizationCheck verify_parameterization() {
  using detail::uv_poly;
  const BiPoly p = uv_poly({{{1, 3}, 64}, {{0, 4}, 192}});
  const BiPoly q = uv_poly({{{2, 2}, 32}, {{1, 3}, 160}, {{0, 4}, 192}});
  const BiPoly norm = uv_poly({{{2, 0}, 1}, {{0, 2}, -8}});
  const BiPoly z = norm * norm;

  const BiPoly t2 = p * p, t3 = t2 * p, x2 = q * q, x3 = x2 * q;
  BiPoly residual = x2 * x2 - UniPoly(Rational(4)) * p * x3 + UniPoly(Rational(2)) * t2 * x2 +
                    UniPoly(Rational(4)) * t3 * q + t2 * t2 - UniPoly(Rational(8)) * t2 * q * z -
                    UniPoly(Rational(4)) * t3 * z;

  ParameterizationCheck out;
  out.ok = residual.is_zero();
  out.residual = residual;
  auto at = [](const BiPoly& f, long u, long v) { return eval(f, Rational(u), Rational(v)); };
  for (auto [u, v] : std::vector<std::pair<long, long>>{{3, 1}, {2, 1}, {0, 1}, {4, 1}}) {
    ParameterizationSample s;
    s.u = u;
    s.v = v;
    s.k = u * u - 8 * v * v;
    Rational k2 = Rational(s.k * s.k);
    s.t0 = at(p, u, v) / k2;
    s.x0 = at(q, u, v) / k2;
    const Rational& t = s.t0;
    const Rational& x = s.x0;
    Rational d = x * x * x * x - Rational(4) * t * x * x * x + Rational(2) * t * t * x * x +
                 Rational(4) * t * t * t * x + t * t * t * t - Rational(8) * t * t * x -
                 Rational(4) * t * t * t;
    s.on_curve = d.is_zero();
    out.ok = out.ok && s.on_curve;
    out.samples.push_back(std::move(s));
  }
  return out;
}

/// Parameters where the image of <(t+3, 4t+6), (9, t+24)> on
/// y^2 = x^3 - (t^2+27)x + 10t^2 + 48t + 90 can fail to be injective even
/// though g(t0, x) is rootless. Taken as given, not re-derived.
inline const std::vector<Rational>& rank_four_exceptions() {
  static const std::vector<Rational> list{Rational(-26), Rational(-19), Rational(-12),
                                          Rational(-11), Rational(-5),  Rational(-3),
                                          Rational(-1),  Rational(6),   Rational(9),
                                          Rational(44)};
  return list;
}

struct ListCriterionVerdict {
  bool injective = false;
  std::string reason;
};

/// t0 outside the exception list and g(t0, x) = x^3 - (t0^2+27)x +
/// 10t0^2 + 48t0 + 90 without rational roots.
inline ListCriterionVerdict rank_four_criterion(const Rational& t0) {
  const auto& ex = rank_four_exceptions();
  if (std::find(ex.begin(), ex.end(), t0) != ex.end()) return {false, "exception-list"};
  UniPoly g(std::vector<Rational>{Rational(10) * t0 * t0 + Rational(48) * t0 + Rational(90),
                                  -(t0 * t0 + Rational(27)), Rational(0), Rational(1)});
  if (has_rational_root(g)) return {false, "g-has-rational-root"};
  return {true, "criterion-holds"};
}

}  // namespace ellspec
