#pragma once

// Residue fields F_p[T]/(pi) of arbitrary degree, used at places of surfaces
// over F_p.  Elements are reduced polynomials over the prime field.

#include <zsurf/ff/gf.hpp>

#include <memory>
#include <random>
#include <string>

namespace zsurf {

struct ResCtx {
  const GFCtx* fp;
  FqPoly pi;  // monic irreducible
  Int order;  // p^deg(pi)

  ResCtx(const GFCtx* base, FqPoly modulus) : fp(base), pi(modulus.monic()) {
    order = 1;
    for (int i = 0; i < pi.degree(); ++i) order *= static_cast<unsigned long>(fp->p());
  }
  int degree() const { return pi.degree(); }
};

struct ResElem {
  const ResCtx* ctx = nullptr;
  FqPoly v;

  ResElem() = default;
  ResElem(const ResCtx* c, FqPoly val) : ctx(c), v(std::move(val)) {
    if (ctx && v.degree() >= ctx->pi.degree()) v = v % ctx->pi;
  }
  static ResElem from_rat(const Rat& x, const ResElem& like) {
    return ResElem(like.ctx, FqPoly::constant(FqElem{like.ctx->fp, like.ctx->fp->from_rat(x)}));
  }

  static const ResCtx* pick(const ResElem& a, const ResElem& b) { return a.ctx ? a.ctx : b.ctx; }
  ResElem operator-() const { return ResElem(ctx, -v); }
  friend ResElem operator+(const ResElem& a, const ResElem& b) { return ResElem(pick(a, b), a.v + b.v); }
  friend ResElem operator-(const ResElem& a, const ResElem& b) { return ResElem(pick(a, b), a.v - b.v); }
  friend ResElem operator*(const ResElem& a, const ResElem& b) {
    const ResCtx* c = pick(a, b);
    return ResElem(c, (a.v * b.v) % c->pi);
  }
  ResElem inverse() const { return ResElem(ctx, poly_inverse_mod(v, ctx->pi)); }
  friend ResElem operator/(const ResElem& a, const ResElem& b) { return a * b.inverse(); }
  friend bool operator==(const ResElem& a, const ResElem& b) { return a.v == b.v; }
  friend bool operator!=(const ResElem& a, const ResElem& b) { return !(a.v == b.v); }
};

template <>
struct field_traits<ResElem> {
  static FqElem base_zero(const ResElem& a) { return FqElem{a.ctx->fp, 0}; }
  static ResElem zero(const ResElem& a) { return ResElem(a.ctx, FqPoly(base_zero(a))); }
  static ResElem one(const ResElem& a) { return ResElem(a.ctx, FqPoly::constant(FqElem{a.ctx->fp, 1})); }
  static ResElem from_int(const ResElem& a, long n) { return ResElem(a.ctx, FqPoly::constant(FqElem{a.ctx->fp, a.ctx->fp->from_int(n)})); }
  static bool is_zero(const ResElem& a) { return a.v.is_zero(); }
  static long characteristic(const ResElem& a) { return a.ctx->fp->p(); }
  static std::string str(const ResElem& a) { return a.v.str("t"); }
};

inline ResElem residue(const ResCtx& c, const FqPoly& f) { return ResElem(&c, f % c.pi); }

// --- uniform field helpers used by the generic factorisation code ---------

inline Int field_order(const FqElem& a) { return Int(static_cast<unsigned long>(a.ctx->q())); }
inline Int field_order(const ResElem& a) { return a.ctx->order; }
inline long field_char(const FqElem& a) { return a.ctx->p(); }
inline long field_char(const ResElem& a) { return a.ctx->fp->p(); }

inline FqElem random_elem(const FqElem& like, std::mt19937_64& rng) {
  return FqElem{like.ctx, static_cast<std::uint32_t>(rng() % like.ctx->q())};
}
inline ResElem random_elem(const ResElem& like, std::mt19937_64& rng) {
  std::vector<FqElem> c;
  for (int i = 0; i < like.ctx->degree(); ++i) c.push_back(FqElem{like.ctx->fp, static_cast<std::uint32_t>(rng() % like.ctx->fp->p())});
  return ResElem(like.ctx, FqPoly(std::move(c), FqElem{like.ctx->fp, 0}));
}

template <class K>
K field_pow(K a, Int e) {
  K acc = one_like(a);
  while (e > 0) {
    if (e % 2 == 1) acc = acc * a;
    e /= 2;
    if (e > 0) a = a * a;
  }
  return acc;
}

/// Quadratic character in any finite field type.
template <class K>
int field_chi(const K& a) {
  if (is_zero(a)) return 0;
  Int e = (field_order(a) - 1) / 2;
  return field_pow(a, e) == one_like(a) ? 1 : -1;
}
inline int field_chi(const FqElem& a) { return a.ctx->chi(a.v); }

/// p-th root (the inverse of Frobenius).
template <class K>
K field_p_root(const K& a) {
  return field_pow(a, field_order(a) / field_char(a));
}

}  // namespace zsurf
