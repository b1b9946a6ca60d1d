#pragma once

// Factorisation over Q by the Zassenhaus method: factor modulo a small prime,
// Hensel-lift, and recombine modular factors under the Mignotte bound.
// Intended for the moderate degrees (<= 40) met in discriminants of the
// catalogue surfaces.

#include <zsurf/algebra/upoly.hpp>
#include <zsurf/ff/factor.hpp>

#include <algorithm>
#include <vector>

namespace zsurf {

namespace detail {

using ZVec = std::vector<Int>;  // integer polynomial, lowest degree first

inline void ztrim(ZVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline Int zmod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}
inline Int zsym(const Int& a, const Int& m) {
  Int r = zmod(a, m);
  if (2 * r > m) r -= m;
  return r;
}
inline ZVec zreduce(ZVec a, const Int& m) {
  for (auto& c : a) c = zmod(c, m);
  ztrim(a);
  return a;
}
inline ZVec zmul(const ZVec& a, const ZVec& b) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}
inline ZVec zsub(ZVec a, const ZVec& b) {
  if (b.size() > a.size()) a.resize(b.size(), Int(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}
inline ZVec zadd_scaled(ZVec a, const ZVec& b, const Int& s) {
  if (b.size() > a.size()) a.resize(b.size(), Int(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
  ztrim(a);
  return a;
}
/// Division by a monic polynomial modulo m.
inline void zdivmod_monic(ZVec a, const ZVec& g, const Int& m, ZVec& q, ZVec& r) {
  a = zreduce(std::move(a), m);
  int dg = static_cast<int>(g.size()) - 1;
  int da = static_cast<int>(a.size()) - 1;
  q.assign(static_cast<std::size_t>(std::max(0, da - dg + 1)), Int(0));
  for (int k = da; k >= dg; --k) {
    Int c = zmod(a[static_cast<std::size_t>(k)], m);
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - dg)] = c;
    for (int i = 0; i <= dg; ++i) a[static_cast<std::size_t>(k - dg + i)] = zmod(a[static_cast<std::size_t>(k - dg + i)] - c * g[static_cast<std::size_t>(i)], m);
  }
  ztrim(q);
  r = zreduce(std::move(a), m);
}

inline ZVec from_fq(const FqPoly& f) {
  ZVec r;
  for (auto& c : f.coeffs()) r.push_back(Int(static_cast<unsigned long>(c.v)));
  return r;
}
inline FqPoly to_fq(const ZVec& a, const GFCtx& k) {
  std::vector<FqElem> c;
  for (auto& v : a) c.push_back(FqElem{&k, static_cast<std::uint32_t>(mod_long(v, k.p()))});
  return FqPoly(std::move(c), FqElem{&k, 0});
}

/// Lifts F = g*h (mod p), g monic, to F = g*h (mod p^k).
inline void hensel_lift(const ZVec& F, ZVec& g, ZVec& h, const GFCtx& fp, int k) {
  Int p(static_cast<unsigned long>(fp.p()));
  FqPoly gs = to_fq(g, fp), hs = to_fq(h, fp), s, t;
  poly_xgcd(gs, hs, s, t);
  ZVec S = from_fq(s), Tt = from_fq(t);
  Int M = p;
  for (int j = 1; j < k; ++j) {
    ZVec e = zsub(F, zmul(g, h));
    for (auto& c : e) c /= M;
    e = zreduce(e, p);
    ZVec q, dg, dh, rem;
    zdivmod_monic(zmul(Tt, e), g, p, q, dg);
    zdivmod_monic(zsub(e, zmul(h, dg)), g, p, dh, rem);
    g = zadd_scaled(g, dg, M);
    h = zadd_scaled(h, dh, M);
    M *= p;
    g = zreduce(g, M);
    h = zreduce(h, M);
  }
}

inline Int zcontent(const ZVec& a) {
  Int g = 0;
  for (auto& c : a) g = int_gcd(g, c);
  return g;
}

inline bool zdivides(const ZVec& d, const ZVec& f, ZVec& quot) {
  QPoly qd(std::vector<Rat>(d.begin(), d.end()), Rat(0)), qf(std::vector<Rat>(f.begin(), f.end()), Rat(0)), q, r;
  QPoly::divmod(qf, qd, q, r);
  if (!r.is_zero()) return false;
  quot.clear();
  for (auto& c : q.coeffs()) {
    if (c.get_den() != 1) return false;
    quot.push_back(c.get_num());
  }
  return true;
}

/// Irreducible factors over Z of a primitive squarefree integer polynomial.
inline std::vector<ZVec> zassenhaus(ZVec F) {
  int n = static_cast<int>(F.size()) - 1;
  if (n <= 1) return {F};
  // pick the prime with the fewest modular factors among a few candidates
  std::vector<FqPoly> best;
  GFCtxPtr best_ctx;
  int tried = 0;
  for (std::uint32_t p = 5; tried < 6; p += 2) {
    if (!is_prime_u64(p)) continue;
    if (mod_long(F.back(), p) == 0) continue;
    auto ctx = prime_field(p);
    FqPoly fp = to_fq(F, *ctx);
    if (poly_gcd(fp, fp.derivative()).degree() > 0) continue;
    ++tried;
    std::vector<FqPoly> fs;
    for (auto& [g, m] : factor_ff(fp)) fs.push_back(g);
    if (best.empty() || fs.size() < best.size()) {
      best = fs;
      best_ctx = ctx;
    }
    if (best.size() == 1) return {F};
  }
  const GFCtx& fp = *best_ctx;
  Int p(static_cast<unsigned long>(fp.p()));
  // Mignotte-type bound on coefficients of any factor, times the leading coefficient
  Int norm2 = 0;
  for (auto& c : F) norm2 += c * c;
  Int nrm;
  mpz_sqrt(nrm.get_mpz_t(), norm2.get_mpz_t());
  nrm += 1;
  Int lc = F.back(), alc = lc < 0 ? Int(-lc) : lc;
  Int bound = (Int(1) << static_cast<unsigned>(n)) * nrm * alc;
  int k = 1;
  Int M = p;
  while (M <= 2 * bound) {
    M *= p;
    ++k;
  }
  // lift each modular factor against its cofactor
  std::vector<ZVec> lifted;
  FqPoly fpoly = to_fq(F, fp);
  for (auto& g : best) {
    FqPoly h = fpoly.exact_div(g);
    ZVec G = from_fq(g), H = from_fq(h);
    hensel_lift(F, G, H, fp, k);
    lifted.push_back(G);
  }
  std::vector<ZVec> out;
  std::vector<int> idx(lifted.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  int s = 1;
  while (2 * s <= static_cast<int>(idx.size())) {
    bool found = false;
    std::vector<int> sel(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) sel[static_cast<std::size_t>(i)] = i;
    while (true) {
      Int lcF = F.back();
      ZVec G{lcF};
      for (int i : sel) G = zreduce(zmul(G, lifted[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]), M);
      for (auto& c : G) c = zsym(c, M);
      ztrim(G);
      Int ct = zcontent(G);
      for (auto& c : G) c /= ct;
      ZVec Q;
      if (zdivides(G, F, Q)) {
        if (G.back() < 0)
          for (auto& c : G) c = -c;
        out.push_back(G);
        F = Q;
        std::vector<int> rest;
        for (std::size_t i = 0; i < idx.size(); ++i)
          if (std::find(sel.begin(), sel.end(), static_cast<int>(i)) == sel.end()) rest.push_back(idx[i]);
        idx = rest;
        found = true;
        break;
      }
      // next combination
      int i = s - 1;
      while (i >= 0 && sel[static_cast<std::size_t>(i)] == static_cast<int>(idx.size()) - s + i) --i;
      if (i < 0) break;
      ++sel[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < s; ++j) sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j) - 1] + 1;
    }
    if (!found) ++s;
  }
  if (F.size() > 1) {
    if (F.back() < 0)
      for (auto& c : F) c = -c;
    out.push_back(F);
  }
  return out;
}

}  // namespace detail

/// Monic irreducible factors over Q with multiplicities, sorted by degree and
/// then by canonical text.
inline std::vector<std::pair<QPoly, int>> factor_Q(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  if (f.degree() <= 0) return out;
  for (auto& [g, m] : squarefree_decomposition(f)) {
    Int den = 1;
    for (auto& c : g.coeffs()) den = int_lcm(den, c.get_den());
    detail::ZVec F;
    for (auto& c : g.coeffs()) F.push_back(c.get_num() * (den / c.get_den()));
    Int ct = detail::zcontent(F);
    for (auto& c : F) c /= ct;
    for (auto& Z : detail::zassenhaus(F)) {
      QPoly q(std::vector<Rat>(Z.begin(), Z.end()), Rat(0));
      out.push_back({q.monic(), m});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.str() < b.first.str();
  });
  return out;
}

/// Rational roots, each listed once, ascending.
inline std::vector<Rat> roots_Q(const QPoly& f) {
  std::vector<Rat> r;
  for (auto& [g, m] : factor_Q(f))
    if (g.degree() == 1) r.push_back(-g.coeff(0));
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace zsurf
