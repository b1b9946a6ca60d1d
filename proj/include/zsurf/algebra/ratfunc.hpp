#pragma once

// Rational functions in one variable over a field K, kept in lowest terms
// with a monic denominator.

#include <zsurf/algebra/upoly.hpp>

#include <climits>
#include <string>
#include <utility>

namespace zsurf {

template <class K>
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Poly<K> num) : num_(std::move(num)), den_(Poly<K>::constant(one_like(num_.zero_elem()))) {}
  RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc constant_from(const K& a, const RatFunc&) { return RatFunc(Poly<K>::constant(a)); }
  static RatFunc constant_from(const K& a) { return RatFunc(Poly<K>::constant(a)); }
  static RatFunc variable(const K& like) { return RatFunc(Poly<K>::x(like)); }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  const K& zero_elem() const { return num_.zero_elem(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc operator-() const { return RatFunc(-num_, den_, raw_tag{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(Poly<K>(a.zero_elem()));
    // cross-cancel before multiplying to keep sizes down
    Poly<K> g1 = poly_gcd(a.num_, b.den_), g2 = poly_gcd(b.num_, a.den_);
    Poly<K> n = a.num_.exact_div(g1) * b.num_.exact_div(g2);
    Poly<K> d = a.den_.exact_div(g2) * b.den_.exact_div(g1);
    return RatFunc(std::move(n), std::move(d), normalize_lead_tag{});
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw AlgebraError("rational function division by zero");
    return a * RatFunc(b.den_, b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  template <class V>
  V eval(const V& v) const {
    return num_.eval(v) / den_.eval(v);
  }

  /// Valuation at the finite place given by the irreducible pi.
  int valuation(const Poly<K>& pi) const {
    if (is_zero()) return INT_MAX;
    return num_.valuation(pi) - den_.valuation(pi);
  }
  /// Valuation at infinity (deg den - deg num).
  int valuation_infinity() const {
    if (is_zero()) return INT_MAX;
    return den_.degree() - num_.degree();
  }

  std::string str(const std::string& var = "T") const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

 private:
  struct raw_tag {};
  struct normalize_lead_tag {};
  RatFunc(Poly<K> n, Poly<K> d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}
  RatFunc(Poly<K> n, Poly<K> d, normalize_lead_tag) : num_(std::move(n)), den_(std::move(d)) {
    K l = den_.lead();
    if (l != one_like(l)) {
      K inv = one_like(l) / l;
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }
  void normalize() {
    if (den_.is_zero()) throw AlgebraError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(one_like(den_.zero_elem()));
      num_ = Poly<K>(den_.zero_elem());
      return;
    }
    Poly<K> g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    K l = den_.lead();
    if (l != one_like(l)) {
      K inv = one_like(l) / l;
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  Poly<K> num_;
  Poly<K> den_;
};

template <class K>
struct field_traits<RatFunc<K>> {
  static RatFunc<K> zero(const RatFunc<K>& a) { return RatFunc<K>(Poly<K>(a.zero_elem())); }
  static RatFunc<K> one(const RatFunc<K>& a) { return RatFunc<K>(Poly<K>::constant(one_like(a.zero_elem()))); }
  static RatFunc<K> from_int(const RatFunc<K>& a, long n) {
    return RatFunc<K>(Poly<K>::constant(int_like(a.zero_elem(), n)));
  }
  static bool is_zero(const RatFunc<K>& a) { return a.is_zero(); }
  static long characteristic(const RatFunc<K>& a) { return zsurf::characteristic(a.zero_elem()); }
  static std::string str(const RatFunc<K>& a) { return a.str(); }
};

template <class K>
struct field_traits<Poly<K>> {
  static Poly<K> zero(const Poly<K>& a) { return Poly<K>(a.zero_elem()); }
  static Poly<K> one(const Poly<K>& a) { return Poly<K>::constant(one_like(a.zero_elem())); }
  static Poly<K> from_int(const Poly<K>& a, long n) { return Poly<K>::constant(int_like(a.zero_elem(), n)); }
  static bool is_zero(const Poly<K>& a) { return a.is_zero(); }
  static long characteristic(const Poly<K>& a) { return zsurf::characteristic(a.zero_elem()); }
  static std::string str(const Poly<K>& a) { return a.str("T"); }
};

using QRatFunc = RatFunc<Rat>;

}  // namespace zsurf
