#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// these oracles are used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "ellspec/arith/poly.hpp"
#include "ellspec/arith/rational.hpp"
#include "ellspec/curves/curve.hpp"

namespace ellspec::oracle {

inline std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

/// Rational root theorem: every candidate +-a/b with a | a_k (lowest
/// nonzero coefficient) and b | a_n, evaluated exactly.
inline std::set<Rational> rational_roots_by_divisors(const UniPoly& p) {
  std::set<Rational> out;
  std::vector<Integer> c = integer_coefficients(p);
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (low > 0) out.insert(Rational(0));
  if (low + 1 == c.size()) return out;
  for (const Integer& a : positive_divisors(c[low])) {
    for (const Integer& b : positive_divisors(c.back())) {
      for (int s : {1, -1}) {
        Rational r(a * s, b);
        if (p(r).is_zero()) out.insert(r);
      }
    }
  }
  return out;
}

/// Real roots of a polynomial whose real roots are simple integers, counted
/// by sign changes between consecutive half-integers in [-range, range].
inline int sign_changes_on_half_grid(const UniPoly& p, int range) {
  int count = 0;
  int last = 0;
  for (int k = -range; k <= range; ++k) {
    int s = p(Rational(2 * k + 1, 2)).sign();
    if (s != 0 && last != 0 && s != last) ++count;
    if (s != 0) last = s;
  }
  return count;
}

inline std::int64_t isqrt64(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// All (u, v) with 0 <= u <= bound and u^2 - d v^2 = k, by scanning u.
inline std::set<std::pair<std::int64_t, std::int64_t>> pell_brute(std::int64_t d, std::int64_t k,
                                                                  std::int64_t bound) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t u = 0; u <= bound; ++u) {
    std::int64_t num = u * u - k;
    if (num < 0 || num % d != 0) continue;
    std::int64_t v2 = num / d;
    std::int64_t v = isqrt64(v2);
    if (v * v != v2) continue;
    out.insert({u, v});
    out.insert({u, -v});
  }
  return out;
}

/// Rational points with x = a / e^2, |a| <= num_bound, e^2 <= den_bound.
inline std::vector<RationalPoint> small_points(const RationalCurve& e, long num_bound,
                                               long den_bound) {
  std::vector<RationalPoint> out;
  for (long s = 1; s * s <= den_bound; ++s) {
    for (long a = -num_bound; a <= num_bound; ++a) {
      Rational x(Integer(a), Integer(s * s));
      if (!(x.den() == Integer(s * s))) continue;
      Rational r = e.rhs(x);
      if (r.sign() < 0) continue;
      if (mpz_perfect_square_p(r.num().get_mpz_t()) == 0 ||
          mpz_perfect_square_p(r.den().get_mpz_t()) == 0) {
        continue;
      }
      Rational y(sqrt(r.num()), sqrt(r.den()));
      out.push_back(e.point(x, y));
      if (!y.is_zero()) out.push_back(e.point(x, -y));
    }
  }
  return out;
}

inline UniPoly from_roots(const std::vector<Rational>& roots) {
  UniPoly p(Rational(1));
  for (const auto& r : roots) p = p * UniPoly(std::vector<Rational>{-r, Rational(1)});
  return p;
}

}  // namespace ellspec::oracle
