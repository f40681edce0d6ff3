#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ellspec/arith/rational.hpp"

namespace ellspec {

namespace detail {
template <class T>
bool coeff_is_zero(const T& v) {
  return is_zero(v);
}
}  // namespace detail

/// Dense univariate polynomial over a commutative ring `R`.
///
/// `coefficients()[i]` is the coefficient of the i-th power; the highest
/// stored coefficient is always nonzero, so the zero polynomial is empty and
/// has degree `kZeroDegree`. `R` must be default-constructible to zero,
/// constructible from `int`, and provide a free `is_zero(const R&)`.
template <class R>
class Poly {
 public:
  using coeff_type = R;
  static constexpr int kZeroDegree = -1;

  Poly() = default;
  Poly(R c) {  // NOLINT(runtime/explicit)
    if (!detail::coeff_is_zero(c)) c_.push_back(std::move(c));
  }
  template <std::integral I>
  Poly(I c) : Poly(R(c)) {}  // NOLINT(runtime/explicit)
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(R c, int k) {
    if (detail::coeff_is_zero(c)) return Poly();
    std::vector<R> v(static_cast<std::size_t>(k) + 1);
    v[k] = std::move(c);
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(R(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<R>& coefficients() const { return c_; }

  /// Coefficient of x^i; zero when i is past the degree.
  R coeff(int i) const {
    if (i < 0 || i > degree()) return R();
    return c_[i];
  }
  const R& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero");
    return c_.back();
  }

  template <class S>
  S eval(const S& at) const {
    S acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * at + S(*it);
    }
    return acc;
  }
  R operator()(const R& at) const { return eval<R>(at); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<R> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
      d[i - 1] = R(static_cast<int>(i)) * c_[i];
    }
    return Poly(std::move(d));
  }

  template <class F>
  auto map(F&& f) const -> Poly<decltype(f(std::declval<const R&>()))> {
    using T = decltype(f(std::declval<const R&>()));
    std::vector<T> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(f(c));
    return Poly<T>(std::move(out));
  }

  Poly operator-() const {
    std::vector<R> v = c_;
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return Poly(std::move(v));
  }
  friend Poly operator*(const R& s, const Poly& p) {
    if (detail::coeff_is_zero(s)) return Poly();
    std::vector<R> v = p.c_;
    for (auto& c : v) c = s * c;
    return Poly(std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
  }

  Poly pow(unsigned k) const {
    Poly result(R(1));
    Poly base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Substitutes another polynomial for the variable.
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * inner + Poly(*it);
    }
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R>& p) {
  return p.is_zero();
}

// Field-only operations. `R` must additionally support division.

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<F>(), a};
  std::vector<F> rem = a.coefficients();
  std::vector<F> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const int db = b.degree();
  const F& lb = b.leading();
  const bool monic = lb == F(1);
  const auto& bc = b.coefficients();
  for (int i = a.degree(); i >= db; --i) {
    if (is_zero(rem[i])) continue;
    F q = monic ? rem[i] : rem[i] / lb;
    for (int j = 0; j <= db; ++j) {
      rem[i - db + j] = rem[i - db + j] - q * bc[j];
    }
    quo[i - db] = std::move(q);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly<F>(std::move(quo)), Poly<F>(std::move(rem))};
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).second;
}

/// Division that must leave no remainder.
template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

template <class F>
Poly<F> make_monic(const Poly<F>& p) {
  if (p.is_zero()) return p;
  const F& lc = p.leading();
  if (lc == F(1)) return p;
  F inv = F(1) / lc;
  return inv * p;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = make_monic(r);
  }
  return make_monic(a);
}

// Rational-coefficient helpers.

using UniPoly = Poly<Rational>;

/// Positive rational c such that p / c has coprime integer coefficients.
inline Rational rational_content(const UniPoly& p) {
  Integer g = 0;
  Integer l = 1;
  for (const auto& c : p.coefficients()) {
    g = integer_gcd(g, c.num());
    l = integer_lcm(l, c.den());
  }
  if (g == 0) return Rational(1);
  return Rational(g, l);
}

/// p divided by its content, with positive leading coefficient.
inline UniPoly primitive_part(const UniPoly& p) {
  if (p.is_zero()) return p;
  Rational c = rational_content(p);
  if (p.leading().sign() < 0) c = -c;
  return c.inverse() * p;
}

inline std::vector<Integer> integer_coefficients(const UniPoly& p) {
  UniPoly q = primitive_part(p);
  std::vector<Integer> out;
  out.reserve(q.coefficients().size());
  for (const auto& c : q.coefficients()) out.push_back(c.num());
  return out;
}

/// Squarefree part (monic) of a nonzero polynomial.
inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return make_monic(p);
  return make_monic(exact_div(p, gcd(p, p.derivative())));
}

namespace detail {

template <class R>
std::string coeff_text(const R& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

}  // namespace detail

/// Renders in the `expr` grammar accepted by the expression parser.
inline std::string to_string(const UniPoly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coefficients()[i];
    if (c.is_zero()) continue;
    Rational a = c.abs();
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    bool unit = a == Rational(1);
    if (i == 0 || !unit) out += a.pretty();
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
  return os << to_string(p, "x");
}

}  // namespace ellspec
