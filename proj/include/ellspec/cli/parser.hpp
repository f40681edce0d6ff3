#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "ellspec/arith/bipoly.hpp"
#include "ellspec/arith/ratfn.hpp"

namespace ellspec {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Recursive-descent parser for
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/')? factor)*
///   factor := base ('^' uint)? | '-' factor
///   base   := letter | integer | '(' expr ')'
/// Unary minus takes the whole factor, so "-t^2" is -(t^2).
///
/// `Sem` supplies the value type and its operations:
///   using value = ...;
///   value constant(const Integer&);
///   value variable(const std::string&, std::size_t pos);  // throws if unknown
///   value divide(const value&, const value&, std::size_t pos);
template <class Sem>
class ExprParser {
 public:
  using value = typename Sem::value;
  static constexpr unsigned kMaxExponent = 4096;

  ExprParser(std::string text, Sem sem = {}) : s_(std::move(text)), sem_(std::move(sem)) {}

  value parse() {
    pos_ = 0;
    value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool at_base_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  value expr() {
    value v = term();
    while (true) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  value term() {
    value v = factor();
    while (true) {
      if (eat('*')) {
        v = v * factor();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        value d = factor();
        v = sem_.divide(v, d, at);
      } else if (at_base_start()) {
        v = v * factor();
      } else {
        return v;
      }
    }
  }

  value factor() {
    if (eat('-')) return -factor();
    value b = base();
    if (!eat('^')) return b;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    unsigned long e = std::stoul(s_.substr(start, pos_ - start));
    if (e > kMaxExponent) fail("exponent too large");
    value r = sem_.constant(Integer(1));
    for (unsigned long i = 0; i < e; ++i) r = r * b;
    return r;
  }

  value base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return sem_.constant(Integer(s_.substr(start, pos_ - start)));
    }
    // Variables are single letters, so "xt" is x*t.
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      return sem_.variable(std::string(1, c), pos_ - 1);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  Sem sem_;
  std::size_t pos_ = 0;
};

/// Elements of Q(t).
struct RatFnSemantics {
  using value = RatFn;
  value constant(const Integer& n) const { return RatFn(Rational(n)); }
  value variable(const std::string& name, std::size_t pos) const {
    if (name != "t") throw ParseError("unknown variable '" + name + "'", pos);
    return RatFn::t();
  }
  value divide(const value& a, const value& b, std::size_t pos) const {
    if (b.is_zero()) throw ParseError("division by zero", pos);
    return a / b;
  }
};

/// Polynomials in x over Q(t); only division by elements of Q(t).
struct RatFnPolySemantics {
  using value = RatFnPoly;
  value constant(const Integer& n) const { return RatFnPoly(RatFn(Rational(n))); }
  value variable(const std::string& name, std::size_t pos) const {
    if (name == "t") return RatFnPoly(RatFn::t());
    if (name == "x") return RatFnPoly::x();
    throw ParseError("unknown variable '" + name + "'", pos);
  }
  value divide(const value& a, const value& b, std::size_t pos) const {
    if (b.is_zero()) throw ParseError("division by zero", pos);
    if (b.degree() > 0) throw ParseError("division by a polynomial in x", pos);
    return (RatFn(1) / b.leading()) * a;
  }
};

inline RatFn parse_rational_function(const std::string& s) {
  return ExprParser<RatFnSemantics>(s).parse();
}

inline Rational parse_rational(const std::string& s) {
  RatFn f = parse_rational_function(s);
  if (!f.is_constant()) throw ParseError("expected a rational constant", 0);
  return f.num().is_zero() ? Rational(0) : f.num().leading();
}

/// Polynomial in t and x, with denominators cleared to a primitive element
/// of Q[t][x].
inline ClearedPoly parse_bivariate(const std::string& s) {
  RatFnPoly p = ExprParser<RatFnPolySemantics>(s).parse();
  if (p.is_zero()) throw ParseError("zero polynomial", 0);
  return clear_denominators(p);
}

}  // namespace ellspec
