#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ellspec/arith/poly.hpp"
#include "ellspec/arith/ratfn.hpp"

namespace ellspec {

/// Polynomial in x whose coefficients are polynomials in t, i.e. Q[t][x].
using BiPoly = Poly<UniPoly>;

/// Polynomial in x over Q(t).
using RatFnPoly = Poly<RatFn>;

inline int t_degree(const BiPoly& p) {
  int d = UniPoly::kZeroDegree;
  for (const auto& c : p.coefficients()) d = std::max(d, c.degree());
  return d;
}

inline Rational eval(const BiPoly& p, const Rational& t0, const Rational& x0) {
  Rational acc;
  const auto& cs = p.coefficients();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x0 + (*it)(t0);
  return acc;
}

struct SpecializedPoly {
  UniPoly poly;
  int nominal_degree = UniPoly::kZeroDegree;

  bool degree_dropped() const { return poly.degree() < nominal_degree; }
};

/// p(t0, x), together with the x-degree before evaluation.
inline SpecializedPoly specialize_poly(const BiPoly& p, const Rational& t0) {
  return {p.map([&](const UniPoly& c) { return c(t0); }), p.degree()};
}

/// Positive rational c such that p / c has integer coefficients with gcd 1.
inline Rational integer_content(const BiPoly& p) {
  Integer g = 0;
  Integer l = 1;
  for (const auto& c : p.coefficients()) {
    for (const auto& r : c.coefficients()) {
      g = integer_gcd(g, r.num());
      l = integer_lcm(l, r.den());
    }
  }
  if (g == 0) return Rational(1);
  return Rational(g, l);
}

/// Monic gcd in Q[t] of all x-coefficients.
inline UniPoly t_content(const BiPoly& p) {
  UniPoly g;
  for (const auto& c : p.coefficients()) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

/// True when p has integer coefficients with gcd 1 and no factor in Q[t]
/// of positive degree.
inline bool is_primitive(const BiPoly& p) {
  return !p.is_zero() && integer_content(p) == Rational(1) &&
         t_content(p).degree() == 0;
}

inline RatFnPoly to_ratfn_poly(const BiPoly& p) {
  return p.map([](const UniPoly& c) { return RatFn(c); });
}

inline bool is_monic_in_x(const BiPoly& p) {
  return !p.is_zero() && p.leading() == UniPoly(Rational(1));
}

struct ClearedPoly {
  BiPoly poly;  // primitive, leading x-coefficient has positive lead
  RatFn unit;   // poly == unit * input
};

/// Scales a polynomial over Q(t) into a primitive element of Q[t][x].
inline ClearedPoly clear_denominators(const RatFnPoly& p) {
  if (p.is_zero()) throw std::domain_error("clear_denominators of zero");
  UniPoly l(Rational(1));
  for (const auto& c : p.coefficients()) {
    if (c.den().degree() > 0) l = make_monic(exact_div(l * c.den(), gcd(l, c.den())));
  }
  std::vector<UniPoly> coeffs;
  coeffs.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) {
    coeffs.push_back(exact_div(l * c.num(), c.den()));
  }
  BiPoly q(std::move(coeffs));
  UniPoly tc = t_content(q);
  if (tc.degree() > 0) {
    q = q.map([&](const UniPoly& c) { return exact_div(c, tc); });
  }
  Rational ic = integer_content(q);
  if (q.leading().leading().sign() < 0) ic = -ic;
  Rational inv = ic.inverse();
  q = q.map([&](const UniPoly& c) { return inv * c; });
  RatFn unit = RatFn(inv * l, tc);
  return {std::move(q), std::move(unit)};
}

/// Renders as a sum of c*t^i*x^j terms, highest x-degree first.
inline std::string to_string(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int j = p.degree(); j >= 0; --j) {
    const UniPoly& c = p.coefficients()[j];
    for (int i = c.degree(); i >= 0; --i) {
      const Rational& r = c.coefficients()[i];
      if (r.is_zero()) continue;
      Rational a = r.abs();
      if (out.empty()) {
        if (r.sign() < 0) out += "-";
      } else {
        out += r.sign() < 0 ? " - " : " + ";
      }
      std::string mono;
      if (i > 0) mono += i > 1 ? "t^" + std::to_string(i) : "t";
      if (j > 0) {
        if (!mono.empty()) mono += "*";
        mono += j > 1 ? "x^" + std::to_string(j) : "x";
      }
      if (mono.empty()) {
        out += a.pretty();
      } else if (a == Rational(1)) {
        out += mono;
      } else {
        out += a.pretty() + "*" + mono;
      }
    }
  }
  return out;
}

}  // namespace ellspec
