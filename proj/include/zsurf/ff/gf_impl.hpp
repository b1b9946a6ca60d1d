#pragma once

#include <zsurf/algebra/upoly.hpp>
#include <zsurf/ff/gf.hpp>

namespace zsurf {

using FqPoly = Poly<FqElem>;

inline FqElem fq(const GFCtx& c, std::uint32_t v) { return FqElem{&c, v}; }

/// Rabin's irreducibility test over a prime field.
inline bool is_irreducible_fp(const FqPoly& f) {
  int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  std::uint32_t p = f.zero_elem().ctx->p();
  FqPoly x = FqPoly::x(f.zero_elem());
  auto frob_iter = [&](int k) {
    FqPoly y = x;
    for (int i = 0; i < k; ++i) y = poly_powmod(y, static_cast<std::uint64_t>(p), f);
    return y;
  };
  if (frob_iter(n) != x % f) return false;
  for (auto& [l, e] : factor_integer(Int(n))) {
    FqPoly g = poly_gcd(frob_iter(n / static_cast<int>(l.get_si())) - x, f);
    if (g.degree() > 0) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::uint32_t> lex_least_irreducible(std::uint32_t p, int r, const GFCtx& fp) {
  if (r == 1) return {0, 1};
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) total *= p;
  for (std::uint64_t n = 0; n < total; ++n) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(r) + 1);
    std::uint64_t m = n;
    for (int i = 0; i < r; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(m % p);
      m /= p;
    }
    c[static_cast<std::size_t>(r)] = 1;
    if (c[0] == 0) continue;
    std::vector<FqElem> fc;
    for (auto v : c) fc.push_back(fq(fp, v));
    if (is_irreducible_fp(FqPoly(std::move(fc), fq(fp, 0)))) return c;
  }
  throw AlgebraError("build_extension: no irreducible polynomial found");
}

}  // namespace detail

inline GFCtxPtr build_extension(std::uint32_t p, int r) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, GFCtxPtr> registry;
  if (p < 3 || !is_prime_u64(p)) throw AlgebraError("build_extension: p must be an odd prime");
  if (r < 1 || r > 12) throw AlgebraError("build_extension: degree must be 1..12");
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, r);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  GFCtxPtr ctx;
  if (r == 1) {
    ctx = std::make_shared<const GFCtx>(p, std::vector<std::uint32_t>{0, 1});
  } else {
    auto base = registry.find({p, 1});
    GFCtxPtr fp = base != registry.end() ? base->second : std::make_shared<const GFCtx>(p, std::vector<std::uint32_t>{0, 1});
    registry[{p, 1}] = fp;
    ctx = std::make_shared<const GFCtx>(p, detail::lex_least_irreducible(p, r, *fp));
  }
  registry[key] = ctx;
  return ctx;
}

/// Reduces a rational polynomial modulo p into the given field.
inline FqPoly reduce_poly(const QPoly& f, const GFCtx& k) {
  std::vector<FqElem> c;
  for (auto& a : f.coeffs()) c.push_back(fq(k, k.from_rat(a)));
  return FqPoly(std::move(c), fq(k, 0));
}

}  // namespace zsurf
