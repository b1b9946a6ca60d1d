#pragma once

// Sections of elliptic surfaces: lifting x-coordinates, the Shioda height
// pairing, Gram matrices, regulators, torsion and rank lower bounds.
//
// A section is stored through the long model as (x, w) with
// 2y + a1 x + a3 = w sqrt(d), d a constant.  Sections with d != 1 live on the
// constant quadratic twist y^2 = x^3 + A d^2 x + B d^3 of the short model as
// (d X, d^2 Y); the fibre types and valuations there are those of the
// surface itself.

#include <zsurf/ec/count.hpp>
#include <zsurf/surface/kodaira.hpp>

#include <climits>
#include <optional>

namespace zsurf {

template <class K>
struct MWSection {
  RatFunc<K> x, w;
  K d;  // one for sections over k(T)
  std::string label;
};

namespace detail {

inline std::optional<Rat> field_sqrt(const Rat& a) {
  Rat r;
  if (!rat_sqrt(a, r)) return std::nullopt;
  return r;
}
inline std::optional<FqElem> field_sqrt(const FqElem& a) { return sqrt_in_field(a); }

/// Sign convention for w: positive leading coefficient over Q, the smaller
/// encoding of the leading coefficient over F_q.
inline bool needs_negation(const Rat& lead) { return lead < 0; }
inline bool needs_negation(const FqElem& lead) { return (-lead).v < lead.v; }

template <class K>
std::optional<Poly<K>> poly_sqrt(const Poly<K>& f) {
  if (f.is_zero()) return f;
  if (f.degree() % 2) return std::nullopt;
  auto c = field_sqrt(f.lead());
  if (!c) return std::nullopt;
  int m = f.degree() / 2;
  std::vector<K> g(static_cast<std::size_t>(m) + 1, zero_like(f.lead()));
  g[static_cast<std::size_t>(m)] = *c;
  K two_c = int_like(*c, 2) * *c;
  for (int t = 1; t <= m; ++t) {
    K s = zero_like(*c);
    for (int i = m - t + 1; i <= m; ++i) {
      int j = 2 * m - t - i;
      if (j > m - t && j <= m) s = s + g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)];
    }
    g[static_cast<std::size_t>(m - t)] = (f.coeff(2 * m - t) - s) / two_c;
  }
  Poly<K> r(g, f.zero_elem());
  if (!(r * r == f)) return std::nullopt;
  return r;
}

template <class K>
std::optional<RatFunc<K>> ratfunc_sqrt(const RatFunc<K>& f) {
  if (f.is_zero()) return f;
  auto n = poly_sqrt(f.num());
  if (!n) return std::nullopt;
  auto d = poly_sqrt(f.den());
  if (!d) return std::nullopt;
  return RatFunc<K>(*n, *d);
}

inline Rat canonical_nonresidue_like(const Rat&) { return Rat(1); }
inline FqElem canonical_nonresidue_like(const FqElem& a) {
  const GFCtx& k = *a.ctx;
  for (std::uint32_t v = 2; v < k.q(); ++v)
    if (k.chi(v) == -1) return FqElem{&k, v};
  throw AlgebraError("no quadratic non-residue");
}

}  // namespace detail

/// Lifts an x-coordinate to a section over k(sqrt d)(T), when possible.
template <class K>
std::optional<MWSection<K>> lift_section(const ShortModel<K>& M, const RatFunc<K>& x, const K& d, std::string label = "") {
  if (zsurf::is_zero(d)) throw AlgebraError("lift_section: d = 0");
  RatFunc<K> s = M.w_squared(x) * RatFunc<K>(Poly<K>::constant(one_like(d) / d));
  auto w = detail::ratfunc_sqrt(s);
  if (!w) return std::nullopt;
  if (!w->is_zero() && detail::needs_negation(w->num().lead())) *w = -*w;
  return MWSection<K>{x, *w, d, std::move(label)};
}

/// Over F_q: picks d = 1 or the canonical non-residue, whichever works.
inline std::optional<MWSection<FqElem>> lift_section_auto(const ShortModel<FqElem>& M, const RatFunc<FqElem>& x, std::string label = "") {
  FqElem one = one_like(M.zero());
  RatFunc<FqElem> s = M.w_squared(x);
  FqElem d = one;
  if (!s.is_zero() && quadratic_character(s.num().lead()) == -1) d = detail::canonical_nonresidue_like(one);
  return lift_section(M, x, d, std::move(label));
}

/// The section through a long-model point (x, y) over k(T).
template <class K>
MWSection<K> section_from_point(const ShortModel<K>& M, const RatFunc<K>& x, const RatFunc<K>& y, std::string label = "") {
  RatFunc<K> w = M.w_of(x, y);
  if (!(w * w == M.w_squared(x))) throw AlgebraError("section_from_point: point not on the curve");
  return MWSection<K>{x, w, one_like(M.zero()), std::move(label)};
}

template <class K>
WModel<RatFunc<K>> twisted_curve(const ShortModel<K>& M, const K& d) {
  RatFunc<K> dd(Poly<K>::constant(d));
  return WModel<RatFunc<K>>::short_model(RatFunc<K>(M.A) * dd * dd, RatFunc<K>(M.B) * dd * dd * dd);
}

template <class K>
CurvePoint<RatFunc<K>> twisted_point(const ShortModel<K>& M, const MWSection<K>& P) {
  RatFunc<K> dd(Poly<K>::constant(P.d));
  return CurvePoint<RatFunc<K>>::affine(M.X_of(P.x) * dd, M.Y_of_w(P.w) * dd * dd);
}

/// Are two constants in the same square class?
inline bool same_twist(const Rat& a, const Rat& b) { return is_rat_square(a / b); }
inline bool same_twist(const FqElem& a, const FqElem& b) { return quadratic_character(a / b) == 1; }

template <class K>
class HeightPairing {
 public:
  explicit HeightPairing(const SurfaceAnalysis<K>& S) : S_(S) {}

  const SurfaceAnalysis<K>& analysis() const { return S_; }

  /// Shioda height of a point on the short model twisted by d.
  Rat height(const CurvePoint<RatFunc<K>>& P, const K& d) const {
    if (P.inf) return Rat(0);
    const ShortModel<K>& M = S_.model;
    int e = M.e;
    const RatFunc<K>& X = P.x;
    const RatFunc<K>& Y = P.y;
    RatFunc<K> dd(Poly<K>::constant(d));
    RatFunc<K> Ad = RatFunc<K>(M.A) * dd * dd;
    RatFunc<K> H = int_like(X, 3) * X * X + Ad;
    // (P.O)
    Rat po = Rat(X.den().degree()) / 2;
    int excess = X.num().degree() - X.den().degree();
    if (excess > 2 * e) po += Rat(excess - 2 * e) / 2;
    Rat contr = 0;
    for (auto& F : S_.fibers) {
      int vX, vY, vH;
      if (F.place.inf) {
        vX = val_inf(X, 2 * e);
        vY = val_inf(Y, 3 * e);
        vH = val_inf(H, 4 * e);
      } else {
        vX = X.valuation(F.place.pi);
        vY = Y.is_zero() ? INT_MAX : Y.valuation(F.place.pi);
        vH = H.is_zero() ? INT_MAX : H.valuation(F.place.pi);
      }
      if (vX < 0 || vY <= 0 || vH <= 0) continue;
      contr += Rat(F.degree()) * component_contribution(F, vY);
    }
    return Rat(2 * S_.m) + 2 * po - contr;
  }

  Rat height(const MWSection<K>& P) const {
    return height(twisted_point(S_.model, P), P.d);
  }

  Rat pairing(const MWSection<K>& P, const MWSection<K>& Q) const {
    if (!same_twist(P.d, Q.d)) return Rat(0);
    const ShortModel<K>& M = S_.model;
    MWSection<K> Q2 = Q;
    if (P.d != Q.d) {
      // rescale w by sqrt(Q.d / P.d) so both live on the twist by P.d
      auto r = detail::field_sqrt(Q.d / P.d);
      Q2.w = Q.w * RatFunc<K>(Poly<K>::constant(*r));
      Q2.d = P.d;
    }
    auto E = twisted_curve(M, P.d);
    auto a = twisted_point(M, P), b = twisted_point(M, Q2);
    Rat hs = height(add_points(E, a, b), P.d);
    return (hs - height(a, P.d) - height(b, P.d)) / 2;
  }

 private:
  static int val_inf(const RatFunc<K>& f, int shift) {
    if (f.is_zero()) return INT_MAX;
    return f.valuation_infinity() + shift;
  }

  static Rat component_contribution(const FiberData<K>& F, int vY) {
    switch (F.symbol.kind) {
      case KodairaKind::I: {
        int n = F.symbol.n;
        int i = std::min(vY, n / 2);
        return Rat(i * (n - i)) / Rat(n);
      }
      case KodairaKind::III: return make_rat(1, 2);
      case KodairaKind::IV: return make_rat(2, 3);
      case KodairaKind::IVstar: return make_rat(4, 3);
      case KodairaKind::IIIstar: return make_rat(3, 2);
      case KodairaKind::Istar:
        if (F.symbol.n == 0) return Rat(1);
        throw AlgebraError("height: I_n* with n > 0 is not supported");
      default:
        throw AlgebraError("height: section through the singular point of a fibre of type " + F.symbol.str());
    }
  }

  const SurfaceAnalysis<K>& S_;
};

using RatMatrix = std::vector<std::vector<Rat>>;

inline Rat determinant(RatMatrix a) {
  std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(a[piv][c]) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline int matrix_rank(RatMatrix a) {
  int rank = 0;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || sgn(a[r][c]) == 0) continue;
      Rat f = a[r][c] / a[static_cast<std::size_t>(rank)][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[static_cast<std::size_t>(rank)][k];
    }
    ++rank;
  }
  return rank;
}

template <class K>
RatMatrix gram_matrix(const HeightPairing<K>& H, const std::vector<MWSection<K>>& P) {
  std::size_t n = P.size();
  RatMatrix g(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    g[i][i] = H.height(P[i]);
    for (std::size_t j = 0; j < i; ++j) g[i][j] = g[j][i] = H.pairing(P[i], P[j]);
  }
  return g;
}

template <class K>
Rat regulator(const HeightPairing<K>& H, const std::vector<MWSection<K>>& P) {
  if (P.empty()) return Rat(1);
  return determinant(gram_matrix(H, P));
}

/// Reg(fixed, u A + v B) = a u^2 + b u v + c v^2, by bilinearity.
struct BinaryForm {
  Rat a, b, c;
  std::string str() const { return "(" + to_string(a) + ") u^2 + (" + to_string(b) + ") u v + (" + to_string(c) + ") v^2"; }
};

template <class K>
BinaryForm regulator_form(const HeightPairing<K>& H, const std::vector<MWSection<K>>& fixed, const MWSection<K>& A, const MWSection<K>& B) {
  std::vector<MWSection<K>> all = fixed;
  all.push_back(A);
  all.push_back(B);
  RatMatrix g = gram_matrix(H, all);
  std::size_t n = fixed.size();
  auto det_at = [&](const Rat& u, const Rat& v) {
    RatMatrix m(n + 1, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = g[i][j];
      m[i][n] = m[n][i] = u * g[i][n] + v * g[i][n + 1];
    }
    m[n][n] = u * u * g[n][n] + 2 * u * v * g[n][n + 1] + v * v * g[n + 1][n + 1];
    return determinant(m);
  };
  Rat a = det_at(1, 0), c = det_at(0, 1), s = det_at(1, 1);
  return BinaryForm{a, s - a - c, c};
}

/// Number of independent sections among P.
template <class K>
int independent_rank(const HeightPairing<K>& H, const std::vector<MWSection<K>>& P) {
  if (P.empty()) return 0;
  return matrix_rank(gram_matrix(H, P));
}

// --- torsion over Q(T) ---------------------------------------------------

struct TorsionInfo {
  int order = -1;  // -1 when the bounds do not meet
  int lower = 1;
  int upper = 0;
  std::vector<QPoly> two_torsion_x;  // X-coordinates on the short model
  std::vector<std::pair<long, unsigned>> specialisations;  // (t, p) used for the upper bound
};

namespace detail {

inline QPoly lagrange(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  QPoly acc = QPoly::constant(Rat(0));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    QPoly term = QPoly::constant(ys[i]);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      term = term * ((qx() - QPoly::constant(xs[j])) * (Rat(1) / (xs[i] - xs[j])));
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace detail

/// Polynomial roots X(T) of X^3 + A X + B of degree at most 2e, found by
/// interpolating rational roots at 2e + 1 specialisations.
inline std::vector<QPoly> two_torsion_sections(const ShortModel<Rat>& M) {
  int deg = 2 * M.e;
  std::vector<Rat> ts;
  std::vector<std::vector<Rat>> roots;
  QPoly D = M.disc();
  for (long t = 0; static_cast<int>(ts.size()) < deg + 1; ++t) {
    for (long s : {t, -t}) {
      if (static_cast<int>(ts.size()) == deg + 1 || (s == -t && t == 0)) continue;
      Rat T(s);
      if (sgn(D(T)) == 0) continue;
      QPoly c({M.B(T), M.A(T), Rat(0), Rat(1)});
      ts.push_back(T);
      roots.push_back(roots_Q(c));
    }
  }
  std::vector<QPoly> out;
  for (auto& r : roots)
    if (r.empty()) return out;
  std::vector<std::size_t> idx(ts.size(), 0);
  for (;;) {
    std::vector<Rat> ys;
    for (std::size_t i = 0; i < ts.size(); ++i) ys.push_back(roots[i][idx[i]]);
    QPoly X = detail::lagrange(ts, ys);
    if ((X * X * X + M.A * X + M.B).is_zero()) {
      bool dup = false;
      for (auto& y : out) dup = dup || y == X;
      if (!dup) out.push_back(X);
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == roots[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

/// Lower bound from 2-torsion; upper bound as the gcd of |E_t(F_p)| over
/// good specialisations with p in 5..37.
inline TorsionInfo torsion_order(const ShortModel<Rat>& M, int samples = 24) {
  TorsionInfo info;
  info.two_torsion_x = two_torsion_sections(M);
  info.lower = 1 + static_cast<int>(info.two_torsion_x.size());
  Int g = 0;
  int used = 0;
  for (unsigned p : {5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    bool bad_den = false;
    for (auto* f : {&M.A, &M.B})
      for (auto& c : f->coeffs()) bad_den = bad_den || c.get_den() % p == 0;
    if (bad_den) continue;
    auto k = prime_field(p);
    for (long t = 0; t < static_cast<long>(p) && used < samples; ++t) {
      Rat a = M.A(Rat(t)), b = M.B(Rat(t));
      if (sgn(Rat(4) * a * a * a + Rat(27) * b * b) == 0) continue;
      auto E = WModel<FqElem>::short_model(FqElem{k.get(), k->from_rat(a)}, FqElem{k.get(), k->from_rat(b)});
      if (zsurf::is_zero(E.short_disc())) continue;
      g = int_gcd(g, count_points_naive(E));
      info.specialisations.push_back({t, p});
      ++used;
      if (t > 3) break;  // a few values of t per prime
    }
  }
  info.upper = static_cast<int>(g.get_si());
  if (info.upper == info.lower) info.order = info.lower;
  return info;
}

}  // namespace zsurf
