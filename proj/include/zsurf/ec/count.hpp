#pragma once

// Point counting on elliptic curves over F_q: character sums for small q,
// baby-step giant-step with Mestre's twist trick above a threshold, and
// traces of Frobenius of curves over Q.

#include <zsurf/ec/weierstrass.hpp>
#include <zsurf/ff/gf.hpp>

#include <cmath>
#include <random>
#include <unordered_map>

namespace zsurf {

constexpr std::uint64_t kNaiveThreshold = 2048;

/// |W(F_q)| = 1 + sum over x of (1 + chi(disc of the quadratic in y)).
inline Int count_points_naive(const WModel<FqElem>& W) {
  const GFCtx& k = *W.a4.ctx;
  std::uint64_t q = k.q();
  FqElem four{&k, k.from_int(4)};
  long s = 0;
  for (std::uint64_t xv = 0; xv < q; ++xv) {
    FqElem x{&k, static_cast<std::uint32_t>(xv)};
    FqElem l = W.a1 * x + W.a3;
    FqElem d = l * l + four * (((x + W.a2) * x + W.a4) * x + W.a6);
    s += 1 + k.chi(d.v);
  }
  return Int(s + 1);
}

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// All M in [lo, hi] with M*P = O, by baby-step giant-step.
inline std::vector<std::uint64_t> multiples_annihilating(const WModel<FqElem>& E, const CurvePoint<FqElem>& P, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t width = hi - lo + 1;
  std::uint64_t m = isqrt_u64(width) + 1;
  std::unordered_multimap<std::uint32_t, std::pair<std::uint64_t, std::uint32_t>> baby;  // x -> (j, y)
  CurvePoint<FqElem> jp = CurvePoint<FqElem>::infinity();
  std::vector<std::uint64_t> zero_js;
  for (std::uint64_t j = 0; j < m; ++j) {
    if (jp.inf)
      zero_js.push_back(j);
    else
      baby.emplace(jp.x.v, std::make_pair(j, jp.y.v));
    jp = add_points(E, jp, P);
  }
  CurvePoint<FqElem> step = scalar_mul(E, Int(static_cast<unsigned long>(m)), P);
  CurvePoint<FqElem> R = scalar_mul(E, Int(static_cast<unsigned long>(lo)), P);
  std::vector<std::uint64_t> out;
  for (std::uint64_t base = lo; base <= hi; base += m) {
    // base*P + j*P = O  <=>  j*P = -R
    if (R.inf) {
      for (auto j : zero_js)
        if (base + j <= hi) out.push_back(base + j);
    } else {
      CurvePoint<FqElem> negR = negate_point(E, R);
      auto range = baby.equal_range(negR.x.v);
      for (auto it = range.first; it != range.second; ++it)
        if (it->second.second == negR.y.v && base + it->second.first <= hi) out.push_back(base + it->second.first);
    }
    R = add_points(E, R, step);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<CurvePoint<FqElem>> random_point(const WModel<FqElem>& E, std::mt19937_64& rng) {
  const GFCtx& k = *E.a4.ctx;
  for (int tries = 0; tries < 200; ++tries) {
    FqElem x{&k, static_cast<std::uint32_t>(rng() % k.q())};
    FqElem rhs = (x * x + E.a4) * x + E.a6;
    auto y = sqrt_in_field(rhs);
    if (!y) continue;
    if (rng() & 1) *y = -*y;
    return CurvePoint<FqElem>::affine(x, *y);
  }
  return std::nullopt;
}

}  // namespace detail

/// Group order by BSGS in the Hasse interval, alternating between the curve
/// and its quadratic twist until a single candidate survives.  Falls back to
/// the character sum below the threshold or if the candidates never narrow.
inline Int count_points_bsgs(const WModel<FqElem>& W, std::uint64_t naive_below = kNaiveThreshold, std::uint64_t seed = 1, bool* used_naive = nullptr) {
  const GFCtx& k = *W.a4.ctx;
  std::uint64_t q = k.q();
  if (used_naive) *used_naive = true;
  if (q < naive_below) return count_points_naive(W);
  WModel<FqElem> E = W.is_short() ? W : W.short_from_c4c6();
  if (zsurf::is_zero(E.short_disc())) throw AlgebraError("count_points_bsgs: singular curve");
  FqElem g{&k, 1};
  {
    std::mt19937_64 r(seed ^ 0x9e3779b97f4a7c15ull);
    while (k.chi(g.v) != -1) g = FqElem{&k, static_cast<std::uint32_t>(r() % (q - 1) + 1)};
  }
  WModel<FqElem> Et = WModel<FqElem>::short_model(E.a4 * g * g, E.a6 * g * g * g);
  std::uint64_t s = detail::isqrt_u64(4 * q);
  std::uint64_t lo = q + 1 - s, hi = q + 1 + s;
  std::vector<std::uint64_t> cand;
  for (std::uint64_t n = lo; n <= hi; ++n) cand.push_back(n);
  std::mt19937_64 rng(seed);
  for (int it = 0; it < 40 && cand.size() > 1; ++it) {
    bool twist = it % 2 == 1;
    const WModel<FqElem>& C = twist ? Et : E;
    auto P = detail::random_point(C, rng);
    if (!P) continue;
    auto ms = detail::multiples_annihilating(C, *P, lo, hi);
    std::vector<std::uint64_t> keep;
    for (auto n : cand) {
      std::uint64_t m = twist ? 2 * q + 2 - n : n;
      if (std::binary_search(ms.begin(), ms.end(), m)) keep.push_back(n);
    }
    cand.swap(keep);
  }
  if (cand.size() == 1) {
    if (used_naive) *used_naive = false;
    return Int(static_cast<unsigned long>(cand[0]));
  }
  return count_points_naive(W);
}

/// Short model y^2 = x^3 + A x + B of a rational curve, p-integral and
/// minimal at p (p >= 5).
inline std::pair<Rat, Rat> minimal_short_at(const WModel<Rat>& W, const Int& p) {
  auto S = W.is_short() ? W : W.short_from_c4c6();
  Rat A = S.a4, B = S.a6;
  Rat p2 = Rat(p * p), p3 = Rat(p * p * p);
  auto v = [&](const Rat& x) { return sgn(x) == 0 ? 1 << 20 : padic_val(x, p); };
  while (v(A) < 0 || v(B) < 0) {
    A *= p2 * p2;
    B *= p3 * p3;
  }
  while (v(A) >= 4 && v(B) >= 6) {
    A /= p2 * p2;
    B /= p3 * p3;
  }
  return {A, B};
}

inline bool good_reduction_at(const WModel<Rat>& W, const Int& p) {
  if (p < 5) throw AlgebraError("good_reduction_at: p must be >= 5");
  auto [A, B] = minimal_short_at(W, p);
  Rat d = Rat(4) * A * A * A + Rat(27) * B * B;
  return sgn(d) != 0 && padic_val(d, p) == 0;
}

/// Reduction of the p-minimal short model over F_p.
inline WModel<FqElem> reduce_mod_p(const WModel<Rat>& W, std::uint32_t p) {
  auto [A, B] = minimal_short_at(W, Int(static_cast<unsigned long>(p)));
  auto k = prime_field(p);
  return WModel<FqElem>::short_model(FqElem{k.get(), k->from_rat(A)}, FqElem{k.get(), k->from_rat(B)});
}

/// a_p = p + 1 - |E(F_p)| at a prime p >= 5 of good reduction.
inline long trace_of_frobenius(const WModel<Rat>& W, std::uint32_t p) {
  if (p < 5) throw AlgebraError("trace_of_frobenius: p must be >= 5");
  if (!good_reduction_at(W, Int(static_cast<unsigned long>(p)))) throw AlgebraError("trace_of_frobenius: bad reduction at " + std::to_string(p));
  Int n = count_points_bsgs(reduce_mod_p(W, p));
  return static_cast<long>(p) + 1 - n.get_si();
}

}  // namespace zsurf
