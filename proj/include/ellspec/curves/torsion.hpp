#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "ellspec/arith/roots.hpp"
#include "ellspec/curves/curve.hpp"
#include "ellspec/divpoly/division.hpp"

namespace ellspec {

namespace detail {

// #E(F_p) for a prime p of good reduction, p odd.
inline std::uint64_t count_points_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::vector<int> squares(p, 0);
  for (std::uint64_t y = 0; y < p; ++y) squares[y * y % p] += 1;
  std::uint64_t count = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t r = (x * x % p * x + a * x + b) % p;
    count += static_cast<std::uint64_t>(squares[r]);
  }
  return count;
}

inline std::uint64_t reduce_rational(const Rational& r, std::uint64_t p) {
  std::uint64_t n = mpz_fdiv_ui(r.num().get_mpz_t(), p);
  std::uint64_t d = mpz_fdiv_ui(r.den().get_mpz_t(), p);
  return n * pow_mod(d, p - 2, p) % p;
}

}  // namespace detail

/// A multiple of #E(Q)_tors: the gcd of #E(F_p) over small odd primes of
/// good reduction. Torsion injects into E(F_p) for those primes.
inline std::uint64_t torsion_order_bound(const RationalCurve& curve, int primes_used = 12) {
  const Rational disc = curve.discriminant();
  std::uint64_t g = 0;
  int used = 0;
  for (std::uint64_t p : detail::small_primes()) {
    if (used >= primes_used) break;
    if (p == 2) continue;
    if (mpz_fdiv_ui(curve.a().den().get_mpz_t(), p) == 0 ||
        mpz_fdiv_ui(curve.b().den().get_mpz_t(), p) == 0 ||
        mpz_fdiv_ui(disc.num().get_mpz_t(), p) == 0) {
      continue;
    }
    std::uint64_t n = detail::count_points_mod(detail::reduce_rational(curve.a(), p),
                                               detail::reduce_rational(curve.b(), p), p);
    g = std::gcd(g, n);
    ++used;
  }
  return g;
}

/// All torsion points of E(Q), infinity first, then ascending.
///
/// Orders are bounded by Mazur's list; for each admissible order m dividing
/// `torsion_order_bound`, the rational roots of psi_m^2 are lifted and
/// kept when m * Q = O.
inline std::vector<RationalPoint> torsion_subgroup_overQ(const RationalCurve& curve) {
  static constexpr std::array<int, 10> kOrders{2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
  const std::uint64_t bound = torsion_order_bound(curve);
  std::set<RationalPoint> found;
  found.insert(RationalPoint::infinity());
  DivisionTower<Rational> tower(curve);
  for (int m : kOrders) {
    if (bound % static_cast<std::uint64_t>(m) != 0) continue;
    UniPoly psi_sq = tower.square(tower.psi(m));
    for (const auto& r : rational_roots(psi_sq)) {
      for (const auto& q : lift_x(curve, r.value)) {
        if (curve.smul(m, q).is_infinity()) found.insert(q);
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace ellspec
