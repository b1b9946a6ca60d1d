#pragma once

// Minimal short Weierstrass models y^2 = x^3 + A(T) x + B(T) of elliptic
// surfaces over k(T), k = Q or a finite field of characteristic >= 5, and
// the coordinate change from the long model.

#include <zsurf/algebra/factor_q.hpp>
#include <zsurf/algebra/ratfunc.hpp>
#include <zsurf/ec/weierstrass.hpp>
#include <zsurf/ff/factor.hpp>

#include <vector>

namespace zsurf {

/// Monic irreducible factors with multiplicities.
inline std::vector<std::pair<QPoly, int>> irreducible_factors(const QPoly& f) { return factor_Q(f); }
inline std::vector<std::pair<FqPoly, int>> irreducible_factors(const FqPoly& f) { return factor_ff(f); }

template <class K>
using PolyModel = WModel<Poly<K>>;

template <class K>
struct ShortModel {
  PolyModel<K> longm;  // the long model with polynomial coefficients
  Poly<K> b2;          // a1^2 + 4 a2
  Poly<K> A, B;        // minimal short model
  Poly<K> u;           // X = (36 x + 3 b2) / u^2, Y = 108 (2y + a1 x + a3) / u^3
  int e = 0;           // weight at infinity: deg A <= 4e, deg B <= 6e, minimal

  K zero() const { return A.zero_elem(); }
  Poly<K> disc() const { return int_like(A, 4) * A * A * A + int_like(A, 27) * B * B; }
  /// A(1/s) s^{4e} and B(1/s) s^{6e}.
  Poly<K> A_inf() const { return A.reverse(4 * e); }
  Poly<K> B_inf() const { return B.reverse(6 * e); }

  RatFunc<K> X_of(const RatFunc<K>& x) const {
    RatFunc<K> u2(u * u);
    return (RatFunc<K>(int_like(b2, 3) * b2) + x * RatFunc<K>(int_like(b2, 36))) / u2;
  }
  /// 2y + a1 x + a3 is w (times sqrt(d)); Y = 108 w / u^3.
  RatFunc<K> Y_of_w(const RatFunc<K>& w) const { return w * RatFunc<K>(int_like(b2, 108)) / RatFunc<K>(u * u * u); }
  RatFunc<K> w_of(const RatFunc<K>& x, const RatFunc<K>& y) const {
    return int_like(y, 2) * y + RatFunc<K>(longm.a1) * x + RatFunc<K>(longm.a3);
  }
  /// 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2, the square of w.
  RatFunc<K> w_squared(const RatFunc<K>& x) const {
    RatFunc<K> a1(longm.a1), a2(longm.a2), a3(longm.a3), a4(longm.a4), a6(longm.a6);
    RatFunc<K> l = a1 * x + a3;
    return int_like(x, 4) * (((x + a2) * x + a4) * x + a6) + l * l;
  }
  RatFunc<K> x_of(const RatFunc<K>& X) const {
    return (X * RatFunc<K>(u * u) - RatFunc<K>(int_like(b2, 3) * b2)) / RatFunc<K>(int_like(b2, 36));
  }
  WModel<RatFunc<K>> short_curve() const {
    return WModel<RatFunc<K>>::short_model(RatFunc<K>(A), RatFunc<K>(B));
  }
};

namespace detail {

template <class K>
int val_or(const Poly<K>& f, const Poly<K>& pi, int inf = 1 << 20) {
  return f.is_zero() ? inf : f.valuation(pi);
}

inline void scale_constants(QPoly& A, QPoly& B, QPoly& u) {
  // strip integer constants lambda with lambda^4 | content(A), lambda^6 | content(B)
  Int ca = 0, cb = 0;
  for (auto& c : A.coeffs()) ca = int_gcd(ca, c.get_num());
  for (auto& c : B.coeffs()) cb = int_gcd(cb, c.get_num());
  Int g = A.is_zero() ? cb : B.is_zero() ? ca : int_gcd(ca, cb);
  if (g == 0 || g == 1) return;
  Int lam = 1;
  for (auto& [p, k] : factor_integer(g)) {
    int va = A.is_zero() ? 1 << 20 : padic_val(Rat(ca), p), vb = B.is_zero() ? 1 << 20 : padic_val(Rat(cb), p);
    int t = std::min(va / 4, vb / 6);
    for (int i = 0; i < t; ++i) lam *= p;
  }
  if (lam == 1) return;
  Rat l(lam);
  A = A * (Rat(1) / (l * l * l * l));
  B = B * (Rat(1) / (l * l * l * l * l * l));
  u = u * l;
}
inline void scale_constants(FqPoly&, FqPoly&, FqPoly&) {}

}  // namespace detail

/// Builds the minimal short model of a long model with coefficients in k[T].
template <class K>
ShortModel<K> minimal_short_model(const PolyModel<K>& W) {
  ShortModel<K> M;
  M.longm = W;
  auto I = W.invariants();
  M.b2 = I.b2;
  M.A = int_like(I.c4, -27) * I.c4;
  M.B = int_like(I.c6, -54) * I.c6;
  K z = I.c4.zero_elem();
  M.u = Poly<K>::constant(one_like(z));
  if (M.A.is_zero() && M.B.is_zero()) throw AlgebraError("minimal_short_model: singular generic fibre");
  if (M.disc().is_zero()) throw AlgebraError("minimal_short_model: zero discriminant");
  detail::scale_constants(M.A, M.B, M.u);
  Poly<K> g = M.A.is_zero() ? M.B : M.B.is_zero() ? M.A : poly_gcd(M.A, M.B);
  if (g.degree() > 0) {
    for (auto& [pi, mult] : irreducible_factors(g)) {
      int t = std::min(detail::val_or(M.A, pi) / 4, detail::val_or(M.B, pi) / 6);
      if (t <= 0) continue;
      Poly<K> pk = pi.pow(static_cast<unsigned>(t));
      M.A = M.A.exact_div(pk.pow(4));
      M.B = M.B.exact_div(pk.pow(6));
      M.u = M.u * pk;
    }
  }
  int e = 0;
  while ((M.A.degree() > 4 * e) || (M.B.degree() > 6 * e)) ++e;
  M.e = e;
  return M;
}

/// Long model from rational-function coefficients that are polynomials.
template <class K>
PolyModel<K> poly_model(const WModel<RatFunc<K>>& W) {
  auto pol = [](const RatFunc<K>& f) {
    if (!f.is_polynomial()) throw AlgebraError("poly_model: coefficient is not a polynomial");
    return f.num() * Poly<K>::constant(one_like(f.zero_elem()) / f.den().coeff(0));
  };
  return PolyModel<K>{pol(W.a1), pol(W.a2), pol(W.a3), pol(W.a4), pol(W.a6)};
}

/// Reduction of a polynomial with p-integral rational coefficients.
inline FqPoly reduce_mod(const QPoly& f, const GFCtx& k) {
  std::vector<FqElem> c;
  for (auto& a : f.coeffs()) c.push_back(FqElem{&k, k.from_rat(a)});
  return FqPoly(std::move(c), FqElem{&k, 0});
}

inline RatFunc<FqElem> reduce_mod(const QRatFunc& f, const GFCtx& k) {
  FqPoly d = reduce_mod(f.den(), k);
  if (d.is_zero()) throw AlgebraError("reduce_mod: denominator vanishes mod p");
  return RatFunc<FqElem>(reduce_mod(f.num(), k), d);
}

inline PolyModel<FqElem> reduce_mod(const PolyModel<Rat>& W, const GFCtx& k) {
  return PolyModel<FqElem>{reduce_mod(W.a1, k), reduce_mod(W.a2, k), reduce_mod(W.a3, k), reduce_mod(W.a4, k), reduce_mod(W.a6, k)};
}

}  // namespace zsurf
