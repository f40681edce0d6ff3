#pragma once

#include <compare>
#include <concepts>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "ellspec/arith/poly.hpp"
#include "ellspec/arith/ratfn.hpp"
#include "ellspec/arith/rational.hpp"

namespace ellspec {

/// Exact field of characteristic zero; `Rational` and `RatFn` model it.
template <class F>
concept ExactField = std::regular<F> && std::constructible_from<F, int> &&
    requires(const F& a, const F& b) {
      { a + b } -> std::convertible_to<F>;
      { a - b } -> std::convertible_to<F>;
      { a * b } -> std::convertible_to<F>;
      { a / b } -> std::convertible_to<F>;
      { -a } -> std::convertible_to<F>;
      { is_zero(a) } -> std::convertible_to<bool>;
    };

class CurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of y^2 = x^3 + Ax + B: either the point at infinity or affine.
template <ExactField F>
class Point {
 public:
  Point() = default;  // infinity
  static Point infinity() { return Point(); }

  bool is_infinity() const { return inf_; }
  const F& x() const { return x_; }
  const F& y() const { return y_; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.x_ == b.x_ && a.y_ == b.y_;
  }

 private:
  template <ExactField>
  friend class Curve;
  Point(F x, F y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}

  bool inf_ = true;
  F x_{};
  F y_{};
};

/// Short Weierstrass curve y^2 = x^3 + Ax + B with nonzero discriminant.
template <ExactField F>
class Curve {
 public:
  using field_type = F;
  using point_type = Point<F>;

  Curve(F a, F b) : a_(std::move(a)), b_(std::move(b)) {
    if (is_zero(discriminant())) throw CurveError("singular curve");
  }

  const F& a() const { return a_; }
  const F& b() const { return b_; }

  /// -16 (4A^3 + 27B^2).
  F discriminant() const {
    return F(-16) * (F(4) * a_ * a_ * a_ + F(27) * b_ * b_);
  }

  /// x^3 + Ax + B as a polynomial in x.
  Poly<F> cubic() const { return Poly<F>(std::vector<F>{b_, a_, F(0), F(1)}); }

  F rhs(const F& x) const { return x * x * x + a_ * x + b_; }

  bool contains(const F& x, const F& y) const { return y * y == rhs(x); }
  bool contains(const Point<F>& p) const {
    return p.is_infinity() || contains(p.x(), p.y());
  }

  /// Affine point, checked to lie on the curve.
  Point<F> point(F x, F y) const {
    if (!contains(x, y)) throw CurveError("point not on curve");
    return Point<F>(std::move(x), std::move(y));
  }

  Point<F> neg(const Point<F>& p) const {
    if (p.is_infinity()) return p;
    return Point<F>(p.x(), -p.y());
  }

  /// Chord-and-tangent addition.
  Point<F> add(const Point<F>& p, const Point<F>& q) const {
    require_on(p);
    require_on(q);
    return add_unchecked(p, q);
  }

  Point<F> sub(const Point<F>& p, const Point<F>& q) const {
    return add(p, neg(q));
  }

  /// k * p by double-and-add; negative k multiplies the negation.
  Point<F> smul(long long k, const Point<F>& p) const {
    require_on(p);
    Point<F> base = k < 0 ? neg(p) : p;
    unsigned long long m = k < 0 ? 0ULL - static_cast<unsigned long long>(k)
                                 : static_cast<unsigned long long>(k);
    Point<F> acc;
    while (m > 0) {
      if (m & 1ULL) acc = add_unchecked(acc, base);
      m >>= 1ULL;
      if (m > 0) base = add_unchecked(base, base);
    }
    return acc;
  }

  /// Smallest k in [1, max_order] with k * p = O, or 0 if none.
  int order(const Point<F>& p, int max_order = 12) const {
    require_on(p);
    Point<F> acc = p;
    for (int k = 1; k <= max_order; ++k) {
      if (acc.is_infinity()) return k;
      acc = add_unchecked(acc, p);
    }
    return 0;
  }

  friend bool operator==(const Curve& c, const Curve& d) {
    return c.a_ == d.a_ && c.b_ == d.b_;
  }

 private:
  void require_on(const Point<F>& p) const {
    if (!contains(p)) throw CurveError("point not on curve");
  }

  Point<F> add_unchecked(const Point<F>& p, const Point<F>& q) const {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    F lambda;
    if (p.x() == q.x()) {
      if (is_zero(p.y() + q.y())) return Point<F>();
      lambda = (F(3) * p.x() * p.x() + a_) / (F(2) * p.y());
    } else {
      lambda = (q.y() - p.y()) / (q.x() - p.x());
    }
    F x3 = lambda * lambda - p.x() - q.x();
    F y3 = lambda * (p.x() - x3) - p.y();
    return Point<F>(std::move(x3), std::move(y3));
  }

  F a_;
  F b_;
};

using RationalCurve = Curve<Rational>;
using RationalPoint = Point<Rational>;
using FunctionCurve = Curve<RatFn>;
using FunctionPoint = Point<RatFn>;

inline std::strong_ordering operator<=>(const RationalPoint& a,
                                        const RationalPoint& b) {
  if (a.is_infinity() || b.is_infinity()) {
    return b.is_infinity() <=> a.is_infinity();
  }
  if (auto c = a.x() <=> b.x(); c != 0) return c;
  return a.y() <=> b.y();
}

template <ExactField F>
std::ostream& operator<<(std::ostream& os, const Point<F>& p) {
  if (p.is_infinity()) return os << "O";
  return os << "(" << p.x() << ", " << p.y() << ")";
}

/// Exact "(x,y)" rendering with num/den rationals, "O" for infinity.
inline std::string render(const RationalPoint& p) {
  if (p.is_infinity()) return "O";
  return "(" + p.x().str() + "," + p.y().str() + ")";
}

}  // namespace ellspec
