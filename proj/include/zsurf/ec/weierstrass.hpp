#pragma once

// Weierstrass models over any coefficient field K with field_traits<K>, the
// usual b/c invariants, and the chord-tangent group law.

#include <zsurf/algebra/rat.hpp>

#include <optional>
#include <string>
#include <vector>

namespace zsurf {

template <class K>
struct CurveInvariants {
  K b2, b4, b6, b8, c4, c6, disc;
  std::optional<K> j;  // empty when disc = 0
};

template <class K>
struct WModel {
  K a1, a2, a3, a4, a6;

  static WModel short_model(const K& a, const K& b) {
    K z = zero_like(a);
    return WModel{z, z, z, a, b};
  }
  bool is_short() const { return zsurf::is_zero(a1) && zsurf::is_zero(a2) && zsurf::is_zero(a3); }

  CurveInvariants<K> invariants() const {
    CurveInvariants<K> I;
    K two = int_like(a1, 2), four = int_like(a1, 4);
    I.b2 = a1 * a1 + four * a2;
    I.b4 = a1 * a3 + two * a4;
    I.b6 = a3 * a3 + four * a6;
    I.b8 = a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    I.c4 = I.b2 * I.b2 - int_like(a1, 24) * I.b4;
    I.c6 = int_like(a1, -1) * I.b2 * I.b2 * I.b2 + int_like(a1, 36) * I.b2 * I.b4 - int_like(a1, 216) * I.b6;
    I.disc = int_like(a1, -1) * I.b2 * I.b2 * I.b8 - int_like(a1, 8) * I.b4 * I.b4 * I.b4 - int_like(a1, 27) * I.b6 * I.b6 + int_like(a1, 9) * I.b2 * I.b4 * I.b6;
    if (!zsurf::is_zero(I.disc)) I.j = I.c4 * I.c4 * I.c4 / I.disc;
    return I;
  }

  /// -(4a^3 + 27b^2) for a short model y^2 = x^3 + ax + b.
  K short_disc() const {
    if (!is_short()) throw AlgebraError("short_disc: model is not short");
    return int_like(a4, -4) * a4 * a4 * a4 - int_like(a4, 27) * a6 * a6;
  }

  /// The isomorphic short model y^2 = x^3 - 27 c4 x - 54 c6 (char != 2, 3).
  WModel short_from_c4c6() const {
    auto I = invariants();
    return short_model(int_like(a1, -27) * I.c4, int_like(a1, -54) * I.c6);
  }

  bool singular() const { return zsurf::is_zero(invariants().disc); }

  /// Right side minus left side at (x, y).
  K equation(const K& x, const K& y) const { return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6; }

  std::vector<K> coeffs() const { return {a1, a2, a3, a4, a6}; }
  std::string str() const {
    std::string s = "[";
    auto c = coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + field_traits<K>::str(c[i]);
    return s + "]";
  }
  friend bool operator==(const WModel& a, const WModel& b) { return a.coeffs() == b.coeffs(); }
};

template <class K>
struct CurvePoint {
  bool inf = true;
  K x{}, y{};

  static CurvePoint infinity() { return CurvePoint{}; }
  static CurvePoint affine(const K& x, const K& y) { return CurvePoint{false, x, y}; }
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
};

template <class K>
bool on_curve(const WModel<K>& W, const CurvePoint<K>& P) {
  return P.inf || zsurf::is_zero(W.equation(P.x, P.y));
}

template <class K>
CurvePoint<K> negate_point(const WModel<K>& W, const CurvePoint<K>& P) {
  if (P.inf) return P;
  return CurvePoint<K>::affine(P.x, zero_like(P.y) - P.y - W.a1 * P.x - W.a3);
}

template <class K>
CurvePoint<K> add_points(const WModel<K>& W, const CurvePoint<K>& P, const CurvePoint<K>& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  K lambda, nu;
  if (P.x == Q.x) {
    K s = P.y + Q.y + W.a1 * Q.x + W.a3;
    if (zsurf::is_zero(s)) return CurvePoint<K>::infinity();
    K three = int_like(P.x, 3), two = int_like(P.x, 2);
    K num = three * P.x * P.x + two * W.a2 * P.x + W.a4 - W.a1 * P.y;
    K den = two * P.y + W.a1 * P.x + W.a3;
    lambda = num / den;
    nu = (zero_like(P.x) - P.x * P.x * P.x + W.a4 * P.x + two * W.a6 - W.a3 * P.y) / den;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
    nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
  }
  K x3 = lambda * lambda + W.a1 * lambda - W.a2 - P.x - Q.x;
  K y3 = zero_like(P.x) - (lambda + W.a1) * x3 - nu - W.a3;
  return CurvePoint<K>::affine(x3, y3);
}

template <class K>
CurvePoint<K> sub_points(const WModel<K>& W, const CurvePoint<K>& P, const CurvePoint<K>& Q) {
  return add_points(W, P, negate_point(W, Q));
}

template <class K>
CurvePoint<K> scalar_mul(const WModel<K>& W, Int n, CurvePoint<K> P) {
  if (n < 0) {
    n = -n;
    P = negate_point(W, P);
  }
  CurvePoint<K> acc = CurvePoint<K>::infinity();
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = add_points(W, acc, P);
    n >>= 1;
    if (n > 0) P = add_points(W, P, P);
  }
  return acc;
}

template <class K>
CurvePoint<K> scalar_mul(const WModel<K>& W, long n, const CurvePoint<K>& P) {
  return scalar_mul(W, Int(n), P);
}

/// Applies x -> u^2 x + r, y -> u^3 y + s u^2 x + t to the model (standard
/// change of variables); points map by the inverse transformation.
template <class K>
WModel<K> change_coordinates(const WModel<K>& W, const K& u, const K& r, const K& s, const K& t) {
  K two = int_like(u, 2), three = int_like(u, 3);
  K u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  WModel<K> V;
  V.a1 = (W.a1 + two * s) / u;
  V.a2 = (W.a2 - s * W.a1 + three * r - s * s) / u2;
  V.a3 = (W.a3 + r * W.a1 + two * t) / u3;
  V.a4 = (W.a4 - s * W.a3 + two * r * W.a2 - (t + r * s) * W.a1 + three * r * r - two * s * t) / u4;
  V.a6 = (W.a6 + r * W.a4 + r * r * W.a2 + r * r * r - t * W.a3 - t * t - r * t * W.a1) / u6;
  return V;
}

}  // namespace zsurf
