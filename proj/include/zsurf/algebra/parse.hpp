#pragma once

// Parser for polynomial expressions written the ordinary way:
// "2 (T - 1) (T + 2)^2 (T^3 - 2)", "-(19/3) T^4 - 15 T^3".
// Juxtaposition is multiplication; '^' takes a nonnegative integer exponent.
// Rational functions in one variable, or polynomials over Q in several
// single-letter variables (division by constants only).

#include <zsurf/algebra/mpoly.hpp>
#include <zsurf/algebra/ratfunc.hpp>

#include <cctype>
#include <string>

namespace zsurf {

namespace detail {

struct RatFuncOps {
  using V = QRatFunc;
  char var;
  bool is_var(char c) const { return c == var; }
  V variable(char) const { return QRatFunc::variable(Rat(0)); }
  V constant(const Rat& c) const { return QRatFunc::constant_from(c); }
  V divide(const V& a, const V& b) const { return a / b; }
};

struct MPolyOps {
  using V = MPoly;
  std::string vars;
  bool is_var(char c) const { return vars.find(c) != std::string::npos; }
  V variable(char c) const { return MPoly::var(static_cast<int>(vars.size()), static_cast<int>(vars.find(c))); }
  V constant(const Rat& c) const { return MPoly::constant(static_cast<int>(vars.size()), c); }
  V divide(const V& a, const V& b) const {
    if (b.total_degree() != 0 || b.is_zero()) throw AlgebraError("parse_mpoly: division by a non-constant");
    return a * (Rat(1) / b.terms().begin()->second);
  }
};

template <class Ops>
class ExprParser {
  using V = typename Ops::V;

 public:
  ExprParser(const std::string& s, Ops ops) : s_(s), ops_(std::move(ops)) {}

  V parse() {
    V r = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  V expr() {
    skip();
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = get() == '-';
    V acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') return acc;
      get();
      V t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
  }
  V term() {
    V acc = power();
    for (;;) {
      skip();
      char c = peek();
      if (c == '*') {
        get();
        acc = acc * power();
      } else if (c == '/') {
        get();
        acc = ops_.divide(acc, power());
      } else if (c == '(' || ops_.is_var(c) || std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }
  V power() {
    V b = atom();
    skip();
    if (peek() == '^') {
      get();
      skip();
      long e = integer();
      V r = ops_.constant(Rat(1));
      for (long k = 0; k < e; ++k) r = r * b;
      return r;
    }
    return b;
  }
  V atom() {
    skip();
    char c = peek();
    if (c == '(') {
      get();
      V r = expr();
      skip();
      if (get() != ')') fail("expected ')'");
      return r;
    }
    if (ops_.is_var(c)) {
      get();
      return ops_.variable(c);
    }
    if (c == '-') {
      get();
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      Int n(s_.substr(i_, j - i_));
      i_ = j;
      return ops_.constant(Rat(n));
    }
    fail("unexpected character");
    return ops_.constant(Rat(0));
  }
  long integer() {
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) fail("expected exponent");
    long v = std::stol(s_.substr(i_, j - i_));
    i_ = j;
    return v;
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  char get() { return i_ < s_.size() ? s_[i_++] : '\0'; }
  [[noreturn]] void fail(const std::string& what) const { throw AlgebraError("parse error (" + what + ") at " + std::to_string(i_) + " in: " + s_); }

  const std::string& s_;
  Ops ops_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline QRatFunc parse_ratfunc(const std::string& s, char var = 'T') { return detail::ExprParser(s, detail::RatFuncOps{var}).parse(); }

/// Polynomial in the single-letter variables listed in `vars`, in that order.
inline MPoly parse_mpoly(const std::string& s, const std::string& vars) { return detail::ExprParser(s, detail::MPolyOps{vars}).parse(); }

inline QPoly parse_qpoly(const std::string& s, char var = 'T') {
  QRatFunc f = parse_ratfunc(s, var);
  if (!f.is_polynomial()) throw AlgebraError("parse_qpoly: not a polynomial: " + s);
  return f.num();
}

}  // namespace zsurf
