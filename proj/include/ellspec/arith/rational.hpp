#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ellspec {

using Integer = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over `mpq_class`; it exists so that generic code never
/// sees GMP expression templates and so that rendering is under our control.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I v) : q_(static_cast<long>(v)) {}  // NOLINT(runtime/explicit)

  template <std::unsigned_integral I>
  Rational(I v) : q_(static_cast<unsigned long>(v)) {}  // NOLINT

  Rational(const Integer& v) : q_(v) {}  // NOLINT(runtime/explicit)

  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.get_num() = num;
    q_.get_den() = den;
    q_.canonicalize();
  }

  /// Parses "a" or "a/b" with optional leading sign.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(s, 10));
      return Rational(Integer(s.substr(0, slash), 10),
                      Integer(s.substr(slash + 1), 10));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("not a rational number: '" + s + "'");
    }
  }

  const Integer& num() const { return q_.get_num(); }
  const Integer& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    Rational r;
    r.q_ = 1 / q_;
    return r;
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational pow(unsigned k) const {
    Rational r;
    mpz_pow_ui(r.q_.get_num_mpz_t(), num().get_mpz_t(), k);
    mpz_pow_ui(r.q_.get_den_mpz_t(), den().get_mpz_t(), k);
    return r;
  }

  /// Canonical "num/den" form; integers keep the "/1".
  std::string str() const { return num().get_str() + "/" + den().get_str(); }

  /// Human-oriented form: integers without the denominator.
  std::string pretty() const {
    return is_integer() ? num().get_str() : str();
  }

  double to_double() const { return q_.get_d(); }

 private:
  mpq_class q_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.pretty();
}

/// Nonnegative rational square root, if `r` is the square of a rational.
inline std::optional<Rational> is_square(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  if (mpz_perfect_square_p(r.num().get_mpz_t()) == 0 ||
      mpz_perfect_square_p(r.den().get_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer n = sqrt(r.num());
  Integer d = sqrt(r.den());
  return Rational(n, d);
}

inline Integer integer_pow(const Integer& base, unsigned long k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
  return r;
}

inline Integer integer_gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer integer_lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace ellspec
