#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ellspec/arith/poly.hpp"
#include "ellspec/arith/roots.hpp"
#include "ellspec/curves/curve.hpp"

namespace ellspec {

inline constexpr int kDefaultMaxDivisionIndex = 12;

/// An element h(x) or y*h(x) of the coordinate ring, y^2 reduced away.
template <ExactField F>
struct YPoly {
  Poly<F> h;
  bool has_y = false;
};

/// psi_n^2, phi_n and omega_n for one curve and one n.
template <ExactField F>
struct DivisionTriple {
  int n = 0;
  YPoly<F> psi;      // psi_n itself
  Poly<F> psi_sq;    // degree n^2 - 1
  Poly<F> phi;       // degree n^2
  YPoly<F> omega;
};

/// The psi_n recurrence for one curve, extended on demand.
///
/// Thread-safe: lookups take a shared lock, extension an exclusive one.
template <ExactField F>
class DivisionTower {
 public:
  explicit DivisionTower(Curve<F> curve) : curve_(std::move(curve)), f_(curve_.cubic()) {
    const F& a = curve_.a();
    const F& b = curve_.b();
    psi_.push_back({Poly<F>(), false});
    psi_.push_back({Poly<F>(F(1)), false});
    psi_.push_back({Poly<F>(F(2)), true});
    psi_.push_back({Poly<F>(std::vector<F>{-(a * a), F(12) * b, F(6) * a, F(0), F(3)}),
                    false});
    // 4y(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
    std::vector<F> p4{F(-8) * b * b - a * a * a, F(-4) * a * b, F(-5) * a * a,
                      F(20) * b, F(5) * a, F(0), F(1)};
    psi_.push_back({F(4) * Poly<F>(std::move(p4)), true});
  }

  const Curve<F>& curve() const { return curve_; }

  /// psi_k for k >= -1 (psi_{-1} = -1).
  YPoly<F> psi(int k) const {
    if (k < -1) throw std::out_of_range("psi index below -1");
    if (k == -1) return {Poly<F>(F(-1)), false};
    {
      std::shared_lock lock(mu_);
      if (static_cast<std::size_t>(k) < psi_.size()) return psi_[k];
    }
    std::unique_lock lock(mu_);
    while (psi_.size() <= static_cast<std::size_t>(k)) extend();
    return psi_[k];
  }

  YPoly<F> mul(const YPoly<F>& u, const YPoly<F>& v) const {
    Poly<F> h = u.h * v.h;
    if (u.has_y && v.has_y) return {h * f_, false};
    return {std::move(h), u.has_y != v.has_y};
  }

  YPoly<F> sub(const YPoly<F>& u, const YPoly<F>& v) const {
    if (u.h.is_zero()) return {-v.h, v.has_y};
    if (v.h.is_zero()) return u;
    if (u.has_y != v.has_y) throw std::logic_error("y-parity mismatch");
    return {u.h - v.h, u.has_y};
  }

  Poly<F> square(const YPoly<F>& u) const {
    Poly<F> h2 = u.h * u.h;
    return u.has_y ? h2 * f_ : h2;
  }

  /// Divides by c*y; the division must be exact.
  YPoly<F> div_y(const YPoly<F>& u, const F& c) const {
    F inv = F(1) / c;
    if (u.has_y) return {inv * u.h, false};
    return {inv * exact_div(u.h, f_), true};
  }

 private:
  // Caller holds the exclusive lock.
  void extend() const {
    const int k = static_cast<int>(psi_.size());
    const int m = k / 2;
    auto at = [&](int i) -> const YPoly<F>& { return psi_[i]; };
    if (k % 2 == 1) {
      // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
      YPoly<F> a = mul(at(m + 2), mul(at(m), mul(at(m), at(m))));
      YPoly<F> b = mul(at(m - 1), mul(at(m + 1), mul(at(m + 1), at(m + 1))));
      psi_.push_back(sub(a, b));
    } else {
      // psi_{2m} = (psi_m / 2y) (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2)
      YPoly<F> a = mul(at(m + 2), mul(at(m - 1), at(m - 1)));
      YPoly<F> b = mul(at(m - 2), mul(at(m + 1), at(m + 1)));
      psi_.push_back(div_y(mul(at(m), sub(a, b)), F(2)));
    }
  }

  Curve<F> curve_;
  Poly<F> f_;
  mutable std::shared_mutex mu_;
  mutable std::vector<YPoly<F>> psi_;
};

template <ExactField F>
DivisionTriple<F> division_triple(const DivisionTower<F>& tower, int n,
                                  int n_max = kDefaultMaxDivisionIndex) {
  if (n < 1 || n > n_max) throw std::out_of_range("division index out of range");
  DivisionTriple<F> t;
  t.n = n;
  t.psi = tower.psi(n);
  t.psi_sq = tower.square(t.psi);
  YPoly<F> prod = tower.mul(tower.psi(n + 1), tower.psi(n - 1));
  t.phi = Poly<F>::x() * t.psi_sq - prod.h;
  YPoly<F> a = tower.mul(tower.psi(n + 2), tower.mul(tower.psi(n - 1), tower.psi(n - 1)));
  YPoly<F> b = tower.mul(tower.psi(n - 2), tower.mul(tower.psi(n + 1), tower.psi(n + 1)));
  t.omega = tower.div_y(tower.sub(a, b), F(4));
  if (t.psi_sq.degree() != n * n - 1 || t.phi.degree() != n * n) {
    throw std::logic_error("division polynomial degree drop");
  }
  return t;
}

template <ExactField F>
DivisionTriple<F> division_triple(const Curve<F>& curve, int n,
                                  int n_max = kDefaultMaxDivisionIndex) {
  DivisionTower<F> tower(curve);
  return division_triple(tower, n, n_max);
}

/// nQ from the division polynomials; Q must not be n-torsion.
template <ExactField F>
Point<F> mult_by_n_formula(const Curve<F>& curve, const DivisionTriple<F>& t,
                           const Point<F>& q) {
  if (q.is_infinity()) throw std::invalid_argument("mult_by_n_formula needs an affine point");
  if (!curve.contains(q)) throw CurveError("point not on curve");
  F psi_sq = t.psi_sq(q.x());
  if (is_zero(psi_sq)) throw std::domain_error("n-torsion input");
  F psi = t.psi.h(q.x());
  if (t.psi.has_y) psi = psi * q.y();
  F omega = t.omega.h(q.x());
  if (t.omega.has_y) omega = omega * q.y();
  return curve.point(t.phi(q.x()) / psi_sq, omega / (psi * psi * psi));
}

template <ExactField F>
Point<F> mult_by_n_formula(const Curve<F>& curve, int n, const Point<F>& q) {
  return mult_by_n_formula(curve, division_triple(curve, n), q);
}

/// d_{n,P}(x) = phi_n(x) - x_P psi_n^2(x).
template <ExactField F>
Poly<F> division_poly_of_point(const DivisionTriple<F>& t, const Point<F>& p) {
  if (p.is_infinity()) throw std::invalid_argument("division polynomial of infinity");
  return t.phi - p.x() * t.psi_sq;
}

template <ExactField F>
Poly<F> division_poly_of_point(const Curve<F>& curve, int n, const Point<F>& p) {
  if (!curve.contains(p)) throw CurveError("point not on curve");
  return division_poly_of_point(division_triple(curve, n), p);
}

/// Points on the curve with the given x-coordinate (0, 1 or 2 of them).
inline std::vector<RationalPoint> lift_x(const RationalCurve& curve, const Rational& x) {
  std::vector<RationalPoint> out;
  auto root = is_square(curve.rhs(x));
  if (!root) return out;
  out.push_back(curve.point(x, *root));
  if (!root->is_zero()) out.push_back(curve.point(x, -*root));
  return out;
}

/// All Q in E(Q) with nQ = P. Every candidate is confirmed by scalar
/// multiplication, so 2-torsion P is handled correctly.
inline std::vector<RationalPoint> n_division_points(const RationalCurve& curve,
                                                    const RationalPoint& p, int n) {
  if (p.is_infinity()) throw std::invalid_argument("n_division_points needs an affine point");
  if (!curve.contains(p)) throw CurveError("point not on curve");
  std::set<RationalPoint> out;
  UniPoly d = division_poly_of_point(curve, n, p);
  for (const auto& r : rational_roots(d)) {
    for (const auto& q : lift_x(curve, r.value)) {
      if (curve.smul(n, q) == p) out.insert(q);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace ellspec
