#pragma once

// Quadratic extensions K(sqrt d), elements a + b*sqrt(d).

#include <zsurf/algebra/rat.hpp>

#include <string>

namespace zsurf {

template <class K>
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(K a, K b, K d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}
  static QuadExt from_base(const K& a, const K& d) { return QuadExt(a, zero_like(a), d); }
  static QuadExt sqrt_d(const K& d) { return QuadExt(zero_like(d), one_like(d), d); }
  static QuadExt constant_from(const K& a, const QuadExt& like) { return from_base(a, like.d_); }
  static QuadExt from_rat(const Rat& a, const QuadExt& like) { return from_base(K(a), like.d_); }

  const K& a() const { return a_; }
  const K& b() const { return b_; }
  const K& d() const { return d_; }
  bool in_base() const { return zsurf::is_zero(b_); }

  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return QuadExt(x.a_ + y.a_, x.b_ + y.b_, pick(x, y)); }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return QuadExt(x.a_ - y.a_, x.b_ - y.b_, pick(x, y)); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    K d = pick(x, y);
    return QuadExt(x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  QuadExt conj() const { return QuadExt(a_, -b_, d_); }
  K norm() const { return a_ * a_ - d_ * b_ * b_; }
  QuadExt inverse() const {
    K n = norm();
    if (zsurf::is_zero(n)) throw AlgebraError("QuadExt: division by zero");
    return QuadExt(a_ / n, -b_ / n, d_);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }
  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  std::string str() const {
    std::string s = field_traits<K>::str(a_);
    if (zsurf::is_zero(b_)) return s;
    return s + " + (" + field_traits<K>::str(b_) + ")*sqrt(" + field_traits<K>::str(d_) + ")";
  }

 private:
  // elements built from a bare zero may lack d; take it from the other operand
  static const K& pick(const QuadExt& x, const QuadExt& y) { return zsurf::is_zero(x.d_) ? y.d_ : x.d_; }

  K a_{}, b_{}, d_{};
};

template <class K>
struct field_traits<QuadExt<K>> {
  static QuadExt<K> zero(const QuadExt<K>& x) { return QuadExt<K>(zero_like(x.a()), zero_like(x.a()), x.d()); }
  static QuadExt<K> one(const QuadExt<K>& x) { return QuadExt<K>(one_like(x.a()), zero_like(x.a()), x.d()); }
  static QuadExt<K> from_int(const QuadExt<K>& x, long n) { return QuadExt<K>(int_like(x.a(), n), zero_like(x.a()), x.d()); }
  static bool is_zero(const QuadExt<K>& x) { return zsurf::is_zero(x.a()) && zsurf::is_zero(x.b()); }
  static long characteristic(const QuadExt<K>& x) { return zsurf::characteristic(x.a()); }
  static std::string str(const QuadExt<K>& x) { return x.str(); }
};

using QuadRat = QuadExt<Rat>;

inline QuadRat quad_rat(const Rat& a, const Rat& b, const Rat& d) { return QuadRat(a, b, d); }

/// Square root in Q(sqrt d), if it exists.
inline bool quad_sqrt(const QuadRat& x, QuadRat& out) {
  const Rat& d = x.d();
  if (x.in_base()) {
    Rat s;
    if (rat_sqrt(x.a(), s)) {
      out = QuadRat(s, Rat(0), d);
      return true;
    }
    Rat q = x.a() / d;
    if (rat_sqrt(q, s)) {
      out = QuadRat(Rat(0), s, d);
      return true;
    }
    return false;
  }
  // (u + v sqrt d)^2 = a + b sqrt d: u^2 + d v^2 = a, 2uv = b, so u^2 is a root of
  // z^2 - a z + d b^2 / 4.
  Rat disc = x.a() * x.a() - d * x.b() * x.b(), sd;
  if (!rat_sqrt(disc, sd)) return false;
  for (int sgnv : {1, -1}) {
    Rat z = (x.a() + Rat(sgnv) * sd) / 2, u;
    if (sgn(z) == 0 || !rat_sqrt(z, u)) continue;
    Rat v = x.b() / (2 * u);
    out = QuadRat(u, v, d);
    return true;
  }
  return false;
}

}  // namespace zsurf
