#pragma once

// Points on the smooth minimal elliptic surface over F_{p^r}: good fibres by
// character sums (BSGS above a threshold), singular fibres from the Kodaira
// configuration and the Frobenius action on its components.

#include <zsurf/ec/count.hpp>
#include <zsurf/surface/kodaira.hpp>

#include <map>
#include <thread>

namespace zsurf {

constexpr std::uint64_t kSurfaceBsgsThreshold = 4096;

struct PointCounts {
  unsigned p = 0;
  std::map<int, Int> n;                // r -> n_r
  std::map<int, std::string> method;   // r -> "naive" | "bsgs" | "cache"
};

/// Points over F_{p^r} on the fibre above one F_{p^r}-point of a bad place
/// of degree d | r.  Components whose Frobenius^(r/d) cycle is trivial are
/// defined over F_{p^r}; the fixed part of the dual graph is a tree except for
/// a split I_n, whose fixed cycle loses one more point.
inline Int fiber_point_count(const FiberData<FqElem>& F, int r) {
  int d = F.degree();
  if (r % d != 0) throw AlgebraError("fiber_point_count: place of degree " + std::to_string(d) + " has no point over degree " + std::to_string(r));
  if (!F.action_known) throw AlgebraError("fiber_point_count: unknown Galois action at " + F.place.str());
  if (F.symbol.kind == KodairaKind::Istar && F.symbol.n > 0) throw AlgebraError("fiber_point_count: I_n* with n > 0 is not supported");
  const GFCtx& k = *F.place.pi.zero_elem().ctx;
  Int q = 1;
  for (int i = 0; i < r; ++i) q *= static_cast<unsigned long>(k.p());
  int s = r / d;
  long fixed = 1;
  for (int c : F.cycles)
    if (s % c == 0) fixed += c;
  if (F.symbol.multiplicative()) {
    int sign = F.mult_sign;
    int sr = (sign == 1 || s % 2 == 0) ? 1 : -1;
    return 1 + q * fixed - sr;
  }
  return 1 + q * fixed;
}

namespace detail {

inline std::vector<std::uint32_t> embed_coeffs(const FqPoly& f) {
  std::vector<std::uint32_t> c;
  for (auto& a : f.coeffs()) c.push_back(a.v);  // prime-field encodings embed unchanged
  return c;
}

inline std::uint32_t horner(const GFCtx& K, const std::vector<std::uint32_t>& c, std::uint32_t t) {
  std::uint32_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = K.add(K.mul(acc, t), c[i]);
  return acc;
}

/// |E(F_q)| for y^2 = x^3 + a x + b.
inline Int good_fiber_count(const GFCtx& K, std::uint32_t a, std::uint32_t b, std::uint64_t bsgs_above, std::uint64_t seed) {
  std::uint64_t q = K.q();
  if (q <= bsgs_above) {
    long s = 0;
    for (std::uint64_t xv = 0; xv < q; ++xv) {
      auto x = static_cast<std::uint32_t>(xv);
      s += K.chi(K.add(K.mul(K.add(K.mul(x, x), a), x), b));
    }
    return Int(static_cast<long>(q) + 1 + s);
  }
  WModel<FqElem> E = WModel<FqElem>::short_model(FqElem{&K, a}, FqElem{&K, b});
  return count_points_bsgs(E, 0, seed);
}

}  // namespace detail

/// n_r = sum over t in P^1(F_{p^r}) of the fibre counts.
inline Int count_surface(const SurfaceAnalysis<FqElem>& S, int r, unsigned workers = 1, std::uint64_t bsgs_above = kSurfaceBsgsThreshold) {
  const GFCtx& k = *S.model.A.zero_elem().ctx;
  auto Kp = build_extension(k.p(), r);
  const GFCtx& K = *Kp;
  std::uint64_t q = K.q();
  auto Ac = detail::embed_coeffs(S.model.A), Bc = detail::embed_coeffs(S.model.B);
  std::vector<std::vector<std::uint32_t>> places;
  std::vector<Int> bad_counts;
  Int inf_count;
  bool inf_bad = false;
  for (auto& F : S.fibers) {
    if (F.place.inf) {
      inf_bad = true;
      inf_count = fiber_point_count(F, r);
      continue;
    }
    if (r % F.degree() != 0) continue;
    places.push_back(detail::embed_coeffs(F.place.pi));
    bad_counts.push_back(fiber_point_count(F, r));
  }
  if (!inf_bad) {
    auto a = K.from_int(0), b = K.from_int(0);
    a = detail::horner(K, detail::embed_coeffs(S.model.A_inf()), 0);
    b = detail::horner(K, detail::embed_coeffs(S.model.B_inf()), 0);
    inf_count = detail::good_fiber_count(K, a, b, bsgs_above, 7);
  }
  std::uint32_t four = K.from_int(4), t27 = K.from_int(27);
  auto shard = [&](std::uint64_t lo, std::uint64_t hi, Int& out) {
    Int acc = 0;
    for (std::uint64_t tv = lo; tv < hi; ++tv) {
      auto t = static_cast<std::uint32_t>(tv);
      std::uint32_t a = detail::horner(K, Ac, t), b = detail::horner(K, Bc, t);
      std::uint32_t disc = K.add(K.mul(four, K.mul(a, K.mul(a, a))), K.mul(t27, K.mul(b, b)));
      if (disc != 0) {
        acc += detail::good_fiber_count(K, a, b, bsgs_above, tv + 1);
        continue;
      }
      bool found = false;
      for (std::size_t i = 0; i < places.size() && !found; ++i)
        if (detail::horner(K, places[i], t) == 0) {
          acc += bad_counts[i];
          found = true;
        }
      if (!found) throw AlgebraError("count_surface: singular fibre at an unlisted place");
    }
    out = acc;
  };
  unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(q)));
  std::vector<Int> partial(w);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < w; ++i) {
    std::uint64_t lo = q * i / w, hi = q * (i + 1) / w;
    if (w == 1)
      shard(lo, hi, partial[i]);
    else
      pool.emplace_back(shard, lo, hi, std::ref(partial[i]));
  }
  for (auto& th : pool) th.join();
  Int total = inf_count;
  for (auto& x : partial) total += x;
  return total;
}

/// The surface over F_p obtained by reducing a long model over Q(T).
inline SurfaceAnalysis<FqElem> analyze_mod_p(const PolyModel<Rat>& W, const GFCtx& k) {
  return analyze_fibers(reduce_mod(W, k));
}

/// Same geometric fibre configuration over Q and over F_p, symbol by symbol
/// (places may split into smaller degrees).
inline bool same_fiber_configuration(const SurfaceAnalysis<Rat>& SQ, const SurfaceAnalysis<FqElem>& Sp) {
  return SQ.m == Sp.m && geometric_fibers(SQ) == geometric_fibers(Sp);
}

/// The reduction of the minimal model is again a minimal elliptic surface with
/// the same m, i.e. a smooth surface with the same Betti numbers.  Fibres may
/// merge (I3 and I4 into I7, say); the Euler-number check in analyze_fibers
/// guards the total.
inline bool good_prime_test(const PolyModel<Rat>& W, unsigned p) {
  if (p < 5) throw AlgebraError("good_prime_test: p must be >= 5");
  for (auto* c : {&W.a1, &W.a2, &W.a3, &W.a4, &W.a6})
    for (auto& a : c->coeffs())
      if (a.get_den() % p == 0) return false;
  auto k = prime_field(p);
  try {
    auto SQ = analyze_fibers(W);
    auto Sp = analyze_mod_p(W, *k);
    if (Sp.m != SQ.m) return false;
    for (auto& F : Sp.fibers)
      if (F.symbol.kind == KodairaKind::Istar && F.symbol.n > 0) return false;
    return true;
  } catch (const AlgebraError&) {
    return false;
  }
}

}  // namespace zsurf
