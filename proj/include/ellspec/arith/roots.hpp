#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ellspec/arith/bipoly.hpp"
#include "ellspec/arith/poly.hpp"
#include "ellspec/arith/ratfn.hpp"

namespace ellspec {

struct RationalRoot {
  Rational value;
  int multiplicity = 1;

  friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

namespace detail {

using u64 = std::uint64_t;

inline const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    constexpr u64 kLimit = 1 << 16;
    std::vector<bool> composite(kLimit + 1);
    std::vector<u64> out;
    for (u64 i = 2; i <= kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j <= kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline u64 pow_mod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1U) r = r * b % m;
    b = b * b % m;
    e >>= 1U;
  }
  return r;
}

// Coefficient vectors modulo a word-sized prime, lowest degree first.
using ModPoly = std::vector<u64>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly reduce(const std::vector<Integer>& a, u64 p) {
  ModPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  }
  trim(r);
  return r;
}

inline ModPoly rem_mod(ModPoly a, const ModPoly& b, u64 p) {
  const std::size_t db = b.size() - 1;
  const u64 inv = pow_mod(b.back(), p - 2, p);
  while (!a.empty() && a.size() - 1 >= db) {
    u64 q = a.back() * inv % p;
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) {
      a[shift + j] = (a[shift + j] + p - q * b[j] % p) % p;
    }
    trim(a);
  }
  return a;
}

inline int gcd_degree_mod(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = rem_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return static_cast<int>(a.size()) - 1;
}

inline u64 eval_mod(const ModPoly& a, u64 x, u64 p) {
  u64 acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (acc * x + *it) % p;
  return acc;
}

inline std::vector<u64> roots_mod(const ModPoly& a, u64 p) {
  std::vector<u64> out;
  for (u64 x = 0; x < p; ++x) {
    if (eval_mod(a, x, p) == 0) out.push_back(x);
  }
  return out;
}

inline Integer eval_int(const std::vector<Integer>& a, const Integer& x) {
  Integer acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Integer eval_int_mod(const std::vector<Integer>& a, const Integer& x,
                            const Integer& m) {
  Integer acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    acc = acc * x + *it;
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

// Integer roots of a monic, squarefree integer polynomial of degree >= 1,
// by Hensel lifting the roots modulo a prime of good reduction.
inline std::vector<Integer> integer_roots_monic(const std::vector<Integer>& t) {
  const int d = static_cast<int>(t.size()) - 1;
  std::vector<Integer> deriv(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) deriv[i - 1] = t[i] * i;

  const auto& primes = small_primes();
  // Any integer root survives reduction modulo every prime, so a prime
  // with no roots at all settles the question.
  for (std::size_t i = 1; i < 8 && i < primes.size(); ++i) {
    if (roots_mod(reduce(t, primes[i]), primes[i]).empty()) return {};
  }

  u64 p = 0;
  for (std::size_t i = 1; i < primes.size(); ++i) {
    ModPoly tm = reduce(t, primes[i]);
    ModPoly dm = reduce(deriv, primes[i]);
    if (dm.empty()) continue;
    if (gcd_degree_mod(tm, dm, primes[i]) == 0) {
      p = primes[i];
      break;
    }
  }
  if (p == 0) throw std::runtime_error("no prime of good reduction found");

  Integer bound = 0;
  for (int i = 0; i < d; ++i) {
    Integer a = abs(t[i]);
    if (a > bound) bound = a;
  }
  bound += 1;
  const Integer target = 2 * bound + 1;

  std::vector<Integer> out;
  for (u64 r0 : roots_mod(reduce(t, p), p)) {
    Integer m = static_cast<unsigned long>(p);
    Integer r = static_cast<unsigned long>(r0);
    while (m <= target) {
      m = m * m;
      Integer fv = eval_int_mod(t, r, m);
      Integer dv = eval_int_mod(deriv, r, m);
      Integer inv;
      if (mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::logic_error("Hensel lift hit a non-unit derivative");
      }
      r = r - fv * inv;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    }
    Integer y = r;
    if (2 * y > m) y -= m;
    if (eval_int(t, y) == 0) out.push_back(y);
  }
  return out;
}

inline int multiplicity_of(UniPoly p, const Rational& r) {
  int m = 0;
  UniPoly lin(std::vector<Rational>{-r, Rational(1)});
  while (!p.is_zero()) {
    auto [q, rem] = divmod(p, lin);
    if (!rem.is_zero()) break;
    ++m;
    p = std::move(q);
  }
  return m;
}

}  // namespace detail

/// All rational roots of a nonzero polynomial, ascending, with multiplicity.
///
/// The squarefree part is scaled to a monic integer polynomial whose integer
/// roots are found by Hensel lifting modulo a prime of good reduction.
inline std::vector<RationalRoot> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("indeterminate roots");
  std::vector<RationalRoot> out;
  if (p.degree() == 0) return out;

  std::vector<Rational> found;
  UniPoly work = p;
  int zero_mult = 0;
  while (work.coeff(0).is_zero() && !work.is_zero()) {
    std::vector<Rational> shifted(work.coefficients().begin() + 1,
                                  work.coefficients().end());
    work = UniPoly(std::move(shifted));
    ++zero_mult;
  }
  if (zero_mult > 0) out.push_back({Rational(0), zero_mult});

  if (work.degree() >= 1) {
    std::vector<Integer> s = integer_coefficients(squarefree_part(work));
    const int d = static_cast<int>(s.size()) - 1;
    if (d == 1) {
      found.emplace_back(-s[0], s[1]);
    } else {
      // T(y) = L^(d-1) s(y/L) is monic; its integer roots are L * roots of s.
      const Integer lead = s[d];
      std::vector<Integer> t(s.size());
      Integer scale = 1;
      for (int i = d - 1; i >= 0; --i) {
        t[i] = s[i] * scale;
        scale *= lead;
      }
      t[d] = 1;
      for (const Integer& y : detail::integer_roots_monic(t)) {
        found.emplace_back(y, lead);
      }
    }
  }
  for (const auto& r : found) {
    out.push_back({r, detail::multiplicity_of(work, r)});
  }
  std::sort(out.begin(), out.end(),
            [](const RationalRoot& a, const RationalRoot& b) {
              return a.value < b.value;
            });
  return out;
}

inline bool has_rational_root(const UniPoly& p) {
  return !rational_roots(p).empty();
}

/// Sturm chain of the squarefree part, each member scaled by a positive
/// constant to primitive integer form.
inline std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq;
  UniPoly s = primitive_part(squarefree_part(p));
  seq.push_back(s);
  if (s.degree() <= 0) return seq;
  seq.push_back(primitive_part(s.derivative()));
  while (seq.back().degree() > 0) {
    UniPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(rational_content(r).inverse() * r);
  }
  return seq;
}

/// Number of distinct real roots.
inline int real_root_count(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("real_root_count of zero");
  auto seq = sturm_sequence(p);
  auto changes = [&](bool at_plus_infinity) {
    int count = 0;
    int last = 0;
    for (const auto& q : seq) {
      int s = q.leading().sign();
      if (!at_plus_infinity && q.degree() % 2 == 1) s = -s;
      if (s != 0 && last != 0 && s != last) ++count;
      if (s != 0) last = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

/// Resultant as the determinant of the Sylvester matrix whose first deg(q)
/// rows carry the coefficients of p.
inline Rational resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant of zero");
  const int m = p.degree();
  const int n = q.degree();
  const int size = m + n;
  if (size == 0) return Rational(1);
  std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j <= m; ++j) a[r][r + j] = p.coeff(m - j);
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) a[n + r][r + j] = q.coeff(n - j);
  }
  Rational det(1);
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int r = col; r < size; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rational inv = a[col][col].inverse();
    for (int r = col + 1; r < size; ++r) {
      if (a[r][col].is_zero()) continue;
      Rational f = a[r][col] * inv;
      for (int c = col; c < size; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

/// Newton-form interpolation through (xs[i], ys[i]) with distinct xs.
inline UniPoly interpolate(const std::vector<Rational>& xs,
                           const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> coef = ys;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    }
  }
  UniPoly result;
  for (std::size_t k = n; k-- > 0;) {
    result = result * UniPoly(std::vector<Rational>{-xs[k], Rational(1)}) +
             UniPoly(coef[k]);
  }
  return result;
}

struct QtRootsOptions {
  std::size_t tuple_cap = 10000;
};

/// Roots in Q(t) of p in Q[t][x], by specialize-interpolate-verify.
///
/// With c the leading x-coefficient, T(y) = c^(d-1) p(y/c) is monic over
/// Q[t], so each root is y/c for a polynomial y of bounded t-degree.
inline std::vector<RatFn> qt_roots(const BiPoly& p, QtRootsOptions opts = {}) {
  if (p.is_zero() || p.degree() < 1) {
    throw std::domain_error("qt_roots needs positive x-degree");
  }
  const int d = p.degree();
  const UniPoly& lead = p.leading();

  std::vector<UniPoly> t(static_cast<std::size_t>(d) + 1);
  UniPoly scale(Rational(1));
  for (int i = d - 1; i >= 0; --i) {
    t[i] = p.coeff(i) * scale;
    scale = scale * lead;
  }
  t[d] = UniPoly(Rational(1));
  const BiPoly monic(t);

  int ydeg = 0;
  for (int i = 0; i < d; ++i) {
    if (t[i].is_zero()) continue;
    int k = d - i;
    ydeg = std::max(ydeg, (t[i].degree() + k - 1) / k);
  }

  // Candidate points 0, 1, -1, 2, -2, ... avoiding zeros of the leading
  // coefficient; a point with no rational root proves there is no root.
  const std::size_t needed = static_cast<std::size_t>(ydeg) + 1;
  const std::size_t pool = needed + 4;
  struct Sample {
    Rational at;
    std::vector<Rational> roots;
  };
  std::vector<Sample> samples;
  for (long k = 0; samples.size() < pool; ++k) {
    long v = (k % 2 == 0) ? -(k / 2) : (k + 1) / 2;
    Rational at(v);
    if (lead(at).is_zero()) continue;
    UniPoly sp = specialize_poly(monic, at).poly;
    Sample s{at, {}};
    for (const auto& r : rational_roots(sp)) s.roots.push_back(r.value);
    if (s.roots.empty()) return {};
    samples.push_back(std::move(s));
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) {
                     return a.roots.size() < b.roots.size();
                   });
  samples.resize(needed);

  std::size_t tuples = 1;
  for (const auto& s : samples) {
    tuples *= s.roots.size();
    if (tuples > opts.tuple_cap) {
      throw std::runtime_error("qt_roots: interpolation tuple cap exceeded");
    }
  }

  std::vector<Rational> xs;
  for (const auto& s : samples) xs.push_back(s.at);
  std::vector<RatFn> out;
  std::vector<std::size_t> idx(needed, 0);
  for (std::size_t n = 0; n < tuples; ++n) {
    std::vector<Rational> ys;
    for (std::size_t j = 0; j < needed; ++j) ys.push_back(samples[j].roots[idx[j]]);
    UniPoly y = interpolate(xs, ys);
    if (monic.eval<UniPoly>(y).is_zero()) {
      RatFn root(y, lead);
      if (std::find(out.begin(), out.end(), root) == out.end()) {
        out.push_back(std::move(root));
      }
    }
    for (std::size_t j = 0; j < needed; ++j) {
      if (++idx[j] < samples[j].roots.size()) break;
      idx[j] = 0;
    }
  }
  std::sort(out.begin(), out.end(), [](const RatFn& a, const RatFn& b) {
    return a.str() < b.str();
  });
  return out;
}

}  // namespace ellspec
