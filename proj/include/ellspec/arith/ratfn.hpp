#pragma once

#include <concepts>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "ellspec/arith/poly.hpp"

namespace ellspec {

/// Element of Q(t): num/den with den monic and gcd(num, den) = 1.
class RatFn {
 public:
  RatFn() : den_(Rational(1)) {}
  RatFn(Rational c) : num_(std::move(c)), den_(Rational(1)) {}  // NOLINT
  template <std::integral I>
  RatFn(I c) : RatFn(Rational(c)) {}  // NOLINT(runtime/explicit)
  RatFn(UniPoly p) : num_(std::move(p)), den_(Rational(1)) {}  // NOLINT
  RatFn(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static RatFn t() { return RatFn(UniPoly::x()); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }

  bool has_pole_at(const Rational& t0) const { return den_(t0).is_zero(); }

  std::optional<Rational> try_eval(const Rational& t0) const {
    Rational d = den_(t0);
    if (d.is_zero()) return std::nullopt;
    return num_(t0) / d;
  }

  Rational eval(const Rational& t0) const {
    auto v = try_eval(t0);
    if (!v) throw std::domain_error("rational function has a pole at " +
                                    t0.str());
    return *v;
  }

  RatFn operator-() const {
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.is_polynomial() && b.is_polynomial()) return RatFn(a.num_ + b.num_);
    if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    if (a.is_polynomial() && b.is_polynomial()) return RatFn(a.num_ * b.num_);
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q(t)");
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFn pow(unsigned k) const { return RatFn(num_.pow(k), den_.pow(k), 0); }

  /// Renders in the grammar accepted by `parse_rational_function`.
  std::string str() const {
    if (is_polynomial()) return to_string(num_);
    return "(" + to_string(num_) + ")/(" + to_string(den_) + ")";
  }

 private:
  // Already reduced; skips the gcd.
  RatFn(UniPoly num, UniPoly den, int) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = UniPoly(Rational(1));
      return;
    }
    if (den_.degree() > 0) {
      UniPoly g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
      }
    }
    Rational lc = den_.leading();
    if (!(lc == Rational(1))) {
      Rational inv = lc.inverse();
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  UniPoly num_;
  UniPoly den_;
};

inline bool is_zero(const RatFn& f) { return f.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const RatFn& f) {
  return os << f.str();
}

}  // namespace ellspec
