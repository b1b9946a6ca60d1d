#pragma once

// Families of N-congruent elliptic curves for N = 3, 5 from Klein forms, the
// double covers Z*(N, eps) of P^2 branched along two cuspidal cubics, and the
// tangent-line fibrations that produce pairs congruent mod 2N.

#include <zsurf/algebra/factor_q.hpp>
#include <zsurf/algebra/parse.hpp>
#include <zsurf/algebra/square_class.hpp>
#include <zsurf/ec/count.hpp>

#include <numeric>
#include <optional>

namespace zsurf {

enum class KleinCase { C32, C51, C52 };

inline std::string case_name(KleinCase c) {
  switch (c) {
    case KleinCase::C32: return "3,2";
    case KleinCase::C51: return "5,1";
    default: return "5,2";
  }
}
inline int case_N(KleinCase c) { return c == KleinCase::C32 ? 3 : 5; }
inline int case_eps(KleinCase c) { return c == KleinCase::C51 ? 1 : 2; }

/// Smallest representative of eps (Z/NZ)^{x2}; only this class matters.
inline int eps_class(int N, int eps) {
  int e = ((eps % N) + N) % N;
  if (std::gcd(e, N) != 1) throw AlgebraError("eps_class: eps is not a unit mod N");
  int best = N;
  for (int s = 1; s < N; ++s)
    if (std::gcd(s, N) == 1) best = std::min(best, e * s * s % N);
  return best;
}

// --- auxiliary polynomials ----------------------------------------------

/// f, g, h, j, k in x for y^2 = x^3 + a x + b; weights x, a, b = 1, 2, 3.
struct AuxPolys {
  Rat a, b, Delta;  // Delta = -4a^3 - 27b^2
  QPoly f, fx, g, h, j, k;
};

inline AuxPolys aux_polys(const Rat& a, const Rat& b) {
  AuxPolys P;
  P.a = a;
  P.b = b;
  P.Delta = Rat(-4) * a * a * a - Rat(27) * b * b;
  if (sgn(P.Delta) == 0) throw AlgebraError("aux_polys: singular curve");
  auto c = [](const Rat& r) { return QPoly::constant(r); };
  QPoly x = qx();
  P.f = x * x * x + c(a) * x + c(b);
  P.fx = c(Rat(3)) * x * x + c(a);
  P.g = c(3 * a) * x.pow(4) + c(18 * b) * x.pow(3) - c(6 * a * a) * x * x - c(6 * a * b) * x - c(a * a * a + 9 * b * b);
  P.h = c(3 * a) * x * x + c(9 * b) * x - c(a * a);
  P.j = c(27 * b) * x.pow(3) - c(18 * a * a) * x * x - c(27 * a * b) * x - c(2 * a * a * a + 27 * b * b);
  QPoly D4 = c(4 * P.Delta);
  P.k = P.f.pow(3) + P.f * P.j + D4 * P.f + c(Rat(3)) * P.g * (x * P.fx - c(Rat(2)) * P.f);
  if (!(P.j * P.j + c(Rat(4)) * P.h.pow(3) + c(27 * P.Delta) * P.f * P.f).is_zero()) throw AlgebraError("aux_polys: j^2 = -4h^3 - 27 Delta f^2 fails");
  return P;
}

// --- Klein forms ----------------------------------------------------------

namespace detail {

// D in the variables a, b, x, y with (x, y) standing for the binary pair.
inline const std::string& klein_D_text(KleinCase c) {
  static const std::string d32 = "-27 a x^4 - 54 b x^3 y - 18 a^2 x^2 y^2 - 54 a b x y^3 + (a^3 - 27 b^2) y^4";
  static const std::string d51 =
      "x^12 + 22 a x^10 y^2 + 220 b x^9 y^3 - 165 a^2 x^8 y^4 - 528 a b x^7 y^5"
      " - 220 (a^3 + 12 b^2) x^6 y^6 + 264 a^2 b x^5 y^7 - 165 a (5 a^3 + 32 b^2) x^4 y^8"
      " - 880 b (3 a^3 + 20 b^2) x^3 y^9 + 22 a^2 (25 a^3 + 168 b^2) x^2 y^10"
      " + 20 (19 a^4 b + 128 a b^3) x y^11 + (125 a^6 + 1792 a^3 b^2 + 6400 b^4) y^12";
  static const std::string d52 =
      "(125 a^3 - 432 b^2) x^12 + 2430 a^2 b x^11 y - 22 a (25 a^3 - 378 b^2) x^10 y^2"
      " - 110 b (11 a^3 - 108 b^2) x^9 y^3 - 165 a^2 (5 a^3 - 27 b^2) x^8 y^4 - 132 a b (53 a^3 - 189 b^2) x^7 y^5"
      " + 220 (a^6 - 123 a^3 b^2 + 81 b^4) x^6 y^6 + 132 a^2 b (19 a^3 - 297 b^2) x^5 y^7"
      " - 165 (a^7 - 26 a^4 b^2 + 189 a b^4) x^4 y^8 - 110 (3 a^6 b - 34 a^3 b^3 + 135 b^5) x^3 y^9"
      " - 22 a^2 (a^3 - 3 b^2) (a^3 + 27 b^2) x^2 y^10 - 10 a b (5 a^6 + 82 a^3 b^2 + 189 b^4) x y^11"
      " + (a^9 - a^6 b^2 - 181 a^3 b^4 - 675 b^6) y^12";
  return c == KleinCase::C32 ? d32 : c == KleinCase::C51 ? d51 : d52;
}

inline const MPoly& klein_D_generic(KleinCase c) {
  static const MPoly d[3] = {parse_mpoly(klein_D_text(KleinCase::C32), "abxy"), parse_mpoly(klein_D_text(KleinCase::C51), "abxy"),
                             parse_mpoly(klein_D_text(KleinCase::C52), "abxy")};
  return d[static_cast<int>(c)];
}

}  // namespace detail

/// D, A (Hessian multiple) and B (Jacobian multiple) as binary forms in
/// (x, y) for fixed (a, b).
struct KleinData {
  KleinCase kase;
  Rat a, b;
  MPoly D, A, B;

  /// Both sides of the syzygy for this case.
  std::pair<MPoly, MPoly> syzygy_sides() const {
    Rat d = Rat(4) * a * a * a + Rat(27) * b * b;
    switch (kase) {
      case KleinCase::C51: return {4 * A.pow(3) + 27 * B.pow(2), d * D.pow(5)};
      case KleinCase::C32: return {-4 * A.pow(3) - 27 * B.pow(2), 16 * d * d * D.pow(3)};
      default: return {-4 * A.pow(3) - 27 * B.pow(2), 16 * d * d * D.pow(5)};
    }
  }
  bool syzygy_holds() const {
    auto [l, r] = syzygy_sides();
    return l == r;
  }
  /// The curve y^2 = x^3 + A(x0, 1) x + B(x0, 1).
  WModel<Rat> curve_at(const Rat& x0) const {
    std::vector<Rat> pt{x0, Rat(1)};
    return WModel<Rat>::short_model(A.eval(pt), B.eval(pt));
  }
};

inline KleinData klein_covariants(KleinCase c, const Rat& a, const Rat& b) {
  if (sgn(Rat(4) * a * a * a + Rat(27) * b * b) == 0) throw AlgebraError("klein_covariants: singular curve");
  MPoly X = MPoly::var(2, 0), Y = MPoly::var(2, 1);
  KleinData K{c, a, b, detail::klein_D_generic(c).substitute({MPoly::constant(2, a), MPoly::constant(2, b), X, Y}), MPoly(2), MPoly(2)};
  Rat hs = c == KleinCase::C32 ? Rat(1, 108) : c == KleinCase::C51 ? Rat(1, 5808) : Rat(1, 1452);
  Rat js = c == KleinCase::C32 ? Rat(1, 36) : c == KleinCase::C51 ? Rat(1, 360) : Rat(-1, 180);
  MPoly Dx = K.D.derivative(0), Dy = K.D.derivative(1);
  K.A = hs * (Dx.derivative(0) * Dy.derivative(1) - Dx.derivative(1) * Dy.derivative(0));
  K.B = js * (Dx * K.A.derivative(1) - Dy * K.A.derivative(0));
  if (!K.syzygy_holds()) throw AlgebraError("klein_covariants: syzygy fails for case " + case_name(c));
  return K;
}

// --- the models of Z(N, eps) ------------------------------------------------

/// Model coordinates: (u, v, r, s) for (3,2); (t, u, v, r, s) for (5,1);
/// (r, s, v, w) for (5,2).
using ModelPoint = std::vector<Rat>;

/// The model relations, as residuals (all zero on the model).
inline std::vector<Rat> model_relation(KleinCase c, const ModelPoint& m) {
  if (c == KleinCase::C32) {
    const Rat &u = m[0], &v = m[1], &r = m[2], &s = m[3];
    Rat p = u + 3 * v;
    return {Rat((4 * r + p * p) * (r * u - v * v * v) - r * s)};
  }
  if (c == KleinCase::C51) {
    const Rat &t = m[0], &u = m[1], &v = m[2], &r = m[3], &s = m[4];
    return {Rat(r * r + s * t * t - u * (u * u - 11 * u * v - v * v) - (12 * u + v) * s), Rat(r * t - 3 * u * u + 4 * u * v - 4 * s)};
  }
  const Rat &r = m[0], &s = m[1], &v = m[2], &w = m[3];
  Rat q = 4 * s - 2 * v + w;
  return {Rat(r * q * q + 27 * r * s * v + s * w * w - s * s * (v - 4 * w))};
}

inline bool on_model(KleinCase c, const ModelPoint& m) {
  for (auto& e : model_relation(c, m))
    if (sgn(e) != 0) return false;
  return true;
}

/// The Klein form D(x, 1) through the auxiliary polynomials.
inline QPoly klein_D_dehomogenised(KleinCase c, const AuxPolys& P) {
  auto k = [](const Rat& r) { return QPoly::constant(r); };
  if (c == KleinCase::C32) return P.fx.pow(3) - k(Rat(27)) * P.f * P.f;
  if (c == KleinCase::C51) {
    QPoly q = P.f * P.f + P.g;
    return k(Rat(4)) * P.k * P.f - k(Rat(3)) * q * q + k(32 * P.Delta) * q;
  }
  QPoly g3 = P.g.pow(3);
  return k(16 * P.Delta) * P.f.pow(4) - g3 + k(Rat(4)) * (k(Rat(2)) * g3 - P.g * P.g * P.j - k(4 * P.Delta) * P.f * P.f * P.g);
}

inline ModelPoint forward_map(KleinCase c, const Rat& a, const Rat& b, const Rat& x) {
  AuxPolys P = aux_polys(a, b);
  Rat f = P.f(x), g = P.g(x), h = P.h(x), j = P.j(x), k = P.k(x), fx = P.fx(x);
  Rat D = klein_D_dehomogenised(c, P)(x);
  ModelPoint m;
  if (c == KleinCase::C32)
    m = {D, fx * h, h * h * h, 729 * P.Delta * f * f * f * f};
  else if (c == KleinCase::C51)
    m = {4 * f, 2 * (f * f + g), 16 * P.Delta, 4 * k, D};
  else
    m = {P.Delta * f * f * f * f, P.Delta * f * f * g, g * g * g, 2 * g * g * g - g * g * j - 4 * P.Delta * f * f * g};
  if (!on_model(c, m)) throw AlgebraError("forward_map: model relation fails for case " + case_name(c));
  return m;
}

/// (x, a, b) from model coordinates.
struct XAB {
  Rat x, a, b;
};

inline XAB inverse_map(KleinCase c, const ModelPoint& m) {
  XAB o;
  if (c == KleinCase::C32) {
    const Rat &u = m[0], &v = m[1], &r = m[2];
    o.x = r + v * v;
    o.a = -3 * r * (r + u * v + 2 * v * v);
    o.b = r * (u + 3 * v) * (r * u + v * v * v) + 2 * r * r * (r + 3 * v * v);
  } else if (c == KleinCase::C51) {
    const Rat &t = m[0], &u = m[1], &v = m[2], &r = m[3];
    Rat t2 = t * t, t4 = t2 * t2;
    Rat e = 32 * u - v;
    o.x = e + 5 * t2;
    o.a = -3 * (8 * u - v) * e - 288 * r * t + 30 * (28 * u + v) * t2 - 75 * t4;
    o.b = -2 * e * e * (4 * u + v) - 144 * e * r * t + 6 * e * (88 * u - 5 * v) * t2 + 1008 * r * t2 * t - 150 * (28 * u + v) * t4 + 250 * t4 * t2;
  } else {
    const Rat &r = m[0], &s = m[1], &v = m[2], &w = m[3];
    Rat s2 = s * s;
    o.x = 4 * r * s + 4 * r * v + r * w - s2;
    o.a = 3 * (8 * r * s2 * s + 4 * r * s2 * v + 6 * r * s2 * w + r * s * w * w - s2 * s2);
    o.b = r * r * s * (16 * s2 * s - 8 * s2 * v - 24 * s2 * w - 40 * s * v * w - 15 * s * w * w + 4 * v * w * w - 2 * w * w * w) +
          r * s2 * s * (24 * s2 + 8 * s * v + 34 * s * w + 7 * w * w) - 2 * s2 * s2 * s2;
  }
  return o;
}

/// lambda with (x', a', b') = (lambda x, lambda^2 a, lambda^3 b), if any.
inline std::optional<Rat> weighted_scale(const XAB& p, const XAB& q) {
  std::optional<Rat> lam;
  if (sgn(p.x) != 0)
    lam = q.x / p.x;
  else if (sgn(p.a) != 0 && sgn(p.b) != 0)
    lam = (q.b / p.b) / (q.a / p.a);
  if (!lam || sgn(*lam) == 0) return std::nullopt;
  const Rat& l = *lam;
  if (q.x != l * p.x || q.a != l * l * p.a || q.b != l * l * l * p.b) return std::nullopt;
  return lam;
}

/// Square class of disc(E2)/disc(E1) read off the model coordinates.
inline Rat model_disc_ratio(KleinCase c, const ModelPoint& m) {
  if (c == KleinCase::C32) return m[3] / m[0];
  if (c == KleinCase::C51) return m[4];
  return m[0] * (16 * m[0] - m[2] + 4 * m[3]);
}

// --- the double covers Z*(N, eps) ---------------------------------------------

/// F+ and F- in (u, v, w).
inline std::pair<MPoly, MPoly> branch_cubics(KleinCase c) {
  const char* vars = "uvw";
  if (c == KleinCase::C32) return {parse_mpoly("u (u + 3 v + w)^2 + 4 v^3", vars), parse_mpoly("u (u + 3 v - w)^2 + 4 v^3", vars)};
  if (c == KleinCase::C51)
    return {parse_mpoly("u (u^2 - 11 u v - v^2) + w^2 (12 u + v) + 2 w (3 u^2 - 4 u v + 4 w^2)", vars),
            parse_mpoly("u (u^2 - 11 u v - v^2) + w^2 (12 u + v) - 2 w (3 u^2 - 4 u v + 4 w^2)", vars)};
  return {parse_mpoly("u^2 (11 v + 8 w) + w^2 (8 u - v + 4 w) + 2 u (2 v - w) (4 u - v + 4 w)", vars),
          parse_mpoly("u^2 (11 v + 8 w) + w^2 (8 u - v + 4 w) - 2 u (2 v - w) (4 u - v + 4 w)", vars)};
}

namespace detail {

inline QPoly det_qpoly(std::vector<std::vector<QPoly>> m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  QPoly acc = QPoly::constant(Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<QPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<QPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    QPoly t = m[0][j] * det_qpoly(minor);
    acc = j % 2 ? acc - t : acc + t;
  }
  return acc;
}

// coefficient of u^k in F(u, v, 1) as a polynomial in v
inline QPoly coeff_in_u(const MPoly& F, int k) {
  std::vector<Rat> c;
  for (auto& [e, co] : F.terms()) {
    if (e[0] != k) continue;
    std::size_t dv = e[1];
    if (c.size() <= dv) c.resize(dv + 1, Rat(0));
    c[dv] += co;
  }
  return QPoly(std::move(c), Rat(0));
}

inline bool proportional(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
  return a[0] * b[1] == a[1] * b[0] && a[0] * b[2] == a[2] * b[0] && a[1] * b[2] == a[2] * b[1];
}

}  // namespace detail

/// Rational singular points of a ternary form of degree <= 3 in (u, v, w),
/// from the resultant in u of the two first partials on the chart w = 1 and a
/// direct search on the line w = 0.
inline std::vector<std::array<Rat, 3>> singular_points(const MPoly& F) {
  std::vector<MPoly> grad{F.derivative(0), F.derivative(1), F.derivative(2)};
  auto singular = [&](const std::array<Rat, 3>& P) {
    std::vector<Rat> x(P.begin(), P.end());
    for (auto& g : grad)
      if (sgn(g.eval(x)) != 0) return false;
    return true;
  };
  std::vector<std::array<Rat, 3>> out;
  auto add = [&](const std::array<Rat, 3>& P) {
    for (auto& Q : out)
      if (detail::proportional(P, Q)) return;
    if (singular(P)) out.push_back(P);
  };
  // chart w = 1: Sylvester matrix of Fu, Fv as quadratics in u
  std::vector<MPoly> g1;
  for (int i = 0; i < 2; ++i) g1.push_back(grad[static_cast<std::size_t>(i)].substitute({MPoly::var(3, 0), MPoly::var(3, 1), MPoly::constant(3, Rat(1))}));
  QPoly z = QPoly::constant(Rat(0));
  std::vector<std::vector<QPoly>> S(4, std::vector<QPoly>(4, z));
  for (int r = 0; r < 2; ++r)
    for (int k = 0; k <= 2; ++k) {
      S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = detail::coeff_in_u(g1[0], 2 - k);
      S[static_cast<std::size_t>(r + 2)][static_cast<std::size_t>(r + k)] = detail::coeff_in_u(g1[1], 2 - k);
    }
  QPoly R = detail::det_qpoly(S);
  if (R.is_zero()) throw AlgebraError("singular_points: partials share a component");
  for (const Rat& v0 : roots_Q(R)) {
    QPoly g = QPoly::constant(Rat(0));
    for (auto& d : grad) {
      QPoly r = d.to_univariate(0, {Rat(0), v0, Rat(1)});
      g = g.is_zero() ? r : (r.is_zero() ? g : poly_gcd(g, r));
    }
    if (g.is_zero()) throw AlgebraError("singular_points: a line of singular points");
    for (const Rat& u0 : roots_Q(g)) add({u0, v0, Rat(1)});
  }
  // line w = 0
  QPoly g = QPoly::constant(Rat(0));
  for (auto& d : grad) {
    QPoly r = d.to_univariate(0, {Rat(0), Rat(1), Rat(0)});
    g = g.is_zero() ? r : (r.is_zero() ? g : poly_gcd(g, r));
  }
  if (!g.is_zero())
    for (const Rat& u0 : roots_Q(g)) add({u0, Rat(1), Rat(0)});
  add({Rat(1), Rat(0), Rat(0)});
  return out;
}

/// A plane cubic is cuspidal if it has a singular point whose tangent cone is
/// a double line not contained in the curve.  Such a point is an A2
/// singularity, which no reducible cubic has, so the curve is irreducible and
/// the cusp is its only singular point.  A cusp of an irreducible cubic over Q
/// is the unique singular point and hence rational.
inline bool is_cuspidal_cubic(const MPoly& F) {
  if (F.nvars() != 3 || F.total_degree() != 3 || !F.is_homogeneous()) return false;
  auto sing = singular_points(F);
  if (sing.size() != 1) return false;
  std::vector<Rat> P(sing[0].begin(), sing[0].end());
  Rat H[3][3];
  int rank_row = -1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      H[i][j] = F.derivative(i).derivative(j).eval(P);
      if (sgn(H[i][j]) != 0 && rank_row < 0) rank_row = i;
    }
  if (rank_row < 0) return false;
  // rank 1: every 2x2 minor vanishes
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = j + 1; l < 3; ++l)
          if (H[i][j] * H[k][l] != H[i][l] * H[k][j]) return false;
  std::array<Rat, 3> l{H[rank_row][0], H[rank_row][1], H[rank_row][2]};
  // a second point on the tangent line l = 0
  for (int e = 0; e < 3; ++e) {
    std::array<Rat, 3> b{Rat(0), Rat(0), Rat(0)};
    b[static_cast<std::size_t>(e)] = 1;
    std::array<Rat, 3> Q{l[1] * b[2] - l[2] * b[1], l[2] * b[0] - l[0] * b[2], l[0] * b[1] - l[1] * b[0]};
    if ((sgn(Q[0]) == 0 && sgn(Q[1]) == 0 && sgn(Q[2]) == 0) || detail::proportional(Q, sing[0])) continue;
    return sgn(F.eval(std::vector<Rat>(Q.begin(), Q.end()))) != 0;
  }
  return false;
}

/// A point (u : v : w) with y^2 = F+ F-.
struct ZStarPoint {
  Rat u, v, w, y;
};

inline bool on_double_cover(KleinCase c, const ZStarPoint& P) {
  auto [Fp, Fm] = branch_cubics(c);
  std::vector<Rat> pt{P.u, P.v, P.w};
  return P.y * P.y == Fp.eval(pt) * Fm.eval(pt);
}

/// y -> -y swaps the two curves of the pair.
inline ZStarPoint involution1(const ZStarPoint& P) { return {P.u, P.v, P.w, -P.y}; }

/// Changes the choice of square root of the discriminant ratio.
inline ZStarPoint involution2(KleinCase c, const ZStarPoint& P) {
  if (c != KleinCase::C52) return {P.u, P.v, P.w == 0 ? P.w : Rat(-P.w), P.y};
  Rat den = 8 * P.u - (P.v - 4 * P.w);
  if (sgn(den) == 0 || sgn(P.u) == 0) throw AlgebraError("involution2: undefined at this point");
  Rat ut = P.u * (P.v - 4 * P.w) / den;
  Rat q = ut / P.u;
  return {ut, P.v, P.w, q * q * P.y};
}

/// The point of the Z(N, eps) model above a point of Z*, or none where the
/// sheet variable is undefined.
inline std::optional<ModelPoint> model_point(KleinCase c, ZStarPoint P) {
  if (!on_double_cover(c, P)) throw AlgebraError("model_point: point not on the double cover");
  const Rat &u = P.u, &v = P.v, &w = P.w, &y = P.y;
  if (c == KleinCase::C32) {
    // s = u w^2 and 4u r^2 + (u (u+3v)^2 - 4v^3 - u w^2) r - v^3 (u+3v)^2 = 0
    if (sgn(u) == 0) return std::nullopt;
    Rat p = u + 3 * v;
    Rat b1 = u * p * p - 4 * v * v * v - u * w * w;
    Rat r = (-b1 + y) / (8 * u);
    return ModelPoint{u, v, r, u * w * w};
  }
  if (c == KleinCase::C51) {
    // s = w^2 and (r +- w t)^2 = F+-; rescale (u, v, w) until F+ is a square
    auto [Fp, Fm] = branch_cubics(c);
    Rat fp = Fp.eval(std::vector<Rat>{u, v, w});
    if (sgn(w) == 0 || sgn(fp) == 0) return std::nullopt;
    Rat sp;
    if (!rat_sqrt(fp, sp)) {
      P = {u * fp, v * fp, w * fp, y * fp * fp * fp};
      fp = fp * fp * fp * fp;
      rat_sqrt(fp, sp);
    }
    Rat sm = P.y / sp;
    Rat t = (sp - sm) / (2 * P.w), r = (sp + sm) / 2;
    return ModelPoint{t, P.u, P.v, r, P.w * P.w};
  }
  // r = u^2/(8u - v + 4w); (4u - v + 4w)^2 s^2 + c1 s + c0 = 0 after clearing r
  Rat den = 8 * u - v + 4 * w, lead = 4 * u - v + 4 * w;
  if (sgn(den) == 0 || sgn(lead) == 0) return std::nullopt;
  Rat r = u * u / den;
  Rat c1 = 11 * u * u * v + 8 * u * u * w + 8 * u * w * w - v * w * w + 4 * w * w * w;
  Rat s = (-c1 + y) / (2 * lead * lead);
  return ModelPoint{r, s, v, w};
}

// --- congruence evidence ----------------------------------------------------

struct TraceEvidence {
  bool ok = true;
  int checked = 0;
  unsigned first_failure = 0;
  unsigned bound = 0;
};

/// a_p(E1) = a_p(E2) mod N for all p in [5, bound] of good reduction for both.
inline TraceEvidence trace_congruence_check(const WModel<Rat>& E1, const WModel<Rat>& E2, long N, unsigned bound) {
  TraceEvidence ev;
  ev.bound = bound;
  for (unsigned p = 5; p <= bound; ++p) {
    if (!is_prime_u64(p)) continue;
    Int P(static_cast<unsigned long>(p));
    if (!good_reduction_at(E1, P) || !good_reduction_at(E2, P)) continue;
    long d = trace_of_frobenius(E1, p) - trace_of_frobenius(E2, p);
    ++ev.checked;
    if (d % N != 0) {
      ev.ok = false;
      ev.first_failure = p;
      return ev;
    }
  }
  return ev;
}

inline Rat j_invariant(const WModel<Rat>& E) {
  auto I = E.invariants();
  if (sgn(I.disc) == 0 || !I.j) throw AlgebraError("j_invariant: singular curve");
  return *I.j;
}

/// Two curves with j-invariants outside {0, 1728} are 2-congruent iff
/// (j1 - 1728)(j2 - 1728) = m^2 and x^3 - 3 j1 j2 x - 2 j1 j2 (m + 1728)
/// has a rational root for one of the two m.
inline bool two_congruence_test(const Rat& j1, const Rat& j2) {
  for (auto* j : {&j1, &j2})
    if (sgn(*j) == 0 || *j == 1728) throw AlgebraError("two_congruence_test: j in {0, 1728}");
  Rat m;
  if (!rat_sqrt((j1 - 1728) * (j2 - 1728), m)) return false;
  Rat p = j1 * j2;
  for (const Rat& mm : {m, Rat(-m)}) {
    QPoly cubic({Rat(-2 * p * (mm + 1728)), Rat(-3 * p), Rat(0), Rat(1)});
    if (!roots_Q(cubic).empty()) return true;
  }
  return false;
}

struct CongruencePair {
  WModel<Rat> E1, E2;
  int N = 0;
  int eps = 0;
  TraceEvidence evidence;
  Rat disc_ratio;            // disc(E2) / disc(E1)
  bool disc_ratio_square = false;
  bool disc_ratio_matches_model = false;
  Rat j1, j2;
};

inline CongruencePair make_pair_evidence(const WModel<Rat>& E1, const WModel<Rat>& E2, int N, int eps, unsigned bound) {
  CongruencePair cp;
  cp.E1 = E1;
  cp.E2 = E2;
  cp.N = N;
  cp.eps = eps;
  Rat d1 = E1.invariants().disc, d2 = E2.invariants().disc;
  if (sgn(d1) == 0 || sgn(d2) == 0) throw AlgebraError("congruent pair: singular curve");
  cp.disc_ratio = d2 / d1;
  cp.disc_ratio_square = is_rat_square(cp.disc_ratio);
  cp.j1 = j_invariant(E1);
  cp.j2 = j_invariant(E2);
  cp.evidence = trace_congruence_check(E1, E2, N, bound);
  return cp;
}

/// E1: y^2 = x^3 + a x + b and its partner from the Klein covariants at x.
inline CongruencePair congruent_pair_from_point(KleinCase c, const Rat& a, const Rat& b, const Rat& x, unsigned bound = 200) {
  KleinData K = klein_covariants(c, a, b);
  WModel<Rat> E1 = WModel<Rat>::short_model(a, b), E2 = K.curve_at(x);
  CongruencePair cp = make_pair_evidence(E1, E2, case_N(c), case_eps(c), bound);
  ModelPoint m = forward_map(c, a, b, x);
  Rat q = model_disc_ratio(c, m);
  cp.disc_ratio_matches_model = sgn(q) != 0 && square_class(q) == square_class(cp.disc_ratio);
  return cp;
}

// --- the tangent-line fibrations --------------------------------------------

struct TangentCase {
  int N2;  // 2N
  int eps;
  KleinCase base;
};

inline TangentCase tangent_case(int N2, int eps) {
  if (N2 == 6 && eps == 5) return {6, 5, KleinCase::C32};
  if (N2 == 10 && eps == 1) return {10, 1, KleinCase::C51};
  if (N2 == 10 && eps == 3) return {10, 3, KleinCase::C52};
  throw AlgebraError("tangent_case: no tangent-line construction for (" + std::to_string(N2) + "," + std::to_string(eps) + ")");
}

/// Coefficients (alpha, beta, gamma) of the line alpha u + beta v + gamma w = 0
/// at T = T0.
inline std::array<Rat, 3> tangent_line(const TangentCase& tc, const Rat& T) {
  if (tc.N2 == 6) return {T * T * T - 1, 3 * (T - 1), Rat(-1)};
  if (tc.eps == 1) return {T - 2, -T * (T - 1) * (T - 1), 2 * (T - 1)};
  return {T * T * T, -(T + 1), -T * T};
}

/// The line parametrised by (s : 1) -> (u, v, w), solving for the last
/// coordinate with a nonzero coefficient.
struct LineParam {
  std::array<Rat, 3> coeffs;
  int solved;  // index of the eliminated coordinate
  std::array<Rat, 3> at(const Rat& s, const Rat& d = Rat(1)) const {
    std::array<Rat, 3> p;
    int k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != solved) p[static_cast<std::size_t>(i)] = k++ == 0 ? s : d;
    Rat acc = 0;
    for (int i = 0; i < 3; ++i)
      if (i != solved) acc += coeffs[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
    p[static_cast<std::size_t>(solved)] = -acc / coeffs[static_cast<std::size_t>(solved)];
    return p;
  }
};

struct TangentFibre {
  TangentCase tc;
  Rat T0;
  LineParam line;
  QPoly Fplus, Fminus;  // restrictions to the line, in s
  Rat tangent_point;    // double root of Fplus
  QPoly quartic;        // Fplus Fminus / (s - s1)^2
  bool has_linear_factor = false;
};

inline TangentFibre tangent_fibration(int N2, int eps, const Rat& T0) {
  TangentFibre F;
  F.tc = tangent_case(N2, eps);
  F.T0 = T0;
  auto co = tangent_line(F.tc, T0);
  int solved = -1;
  for (int i = 2; i >= 0; --i)
    if (sgn(co[static_cast<std::size_t>(i)]) != 0) {
      solved = i;
      break;
    }
  if (solved < 0) throw AlgebraError("tangent_fibration: degenerate line");
  F.line = LineParam{co, solved};
  // restrict F+- to the line as polynomials in s
  auto [Fp, Fm] = branch_cubics(F.tc.base);
  std::vector<MPoly> img(3);
  MPoly s = MPoly::var(1, 0), one = MPoly::constant(1, Rat(1));
  int k = 0;
  for (int i = 0; i < 3; ++i)
    if (i != solved) img[static_cast<std::size_t>(i)] = k++ == 0 ? s : one;
  MPoly acc(1);
  for (int i = 0; i < 3; ++i)
    if (i != solved) acc += co[static_cast<std::size_t>(i)] * img[static_cast<std::size_t>(i)];
  img[static_cast<std::size_t>(solved)] = (Rat(-1) / co[static_cast<std::size_t>(solved)]) * acc;
  F.Fplus = Fp.substitute(img).to_univariate(0, {Rat(0)});
  F.Fminus = Fm.substitute(img).to_univariate(0, {Rat(0)});
  if (F.Fplus.degree() != 3 || F.Fminus.degree() != 3) throw AlgebraError("tangent_fibration: degenerate T0 (cubic drops degree)");
  QPoly g = poly_gcd(F.Fplus, F.Fplus.derivative());
  if (g.degree() != 1) throw AlgebraError("tangent_fibration: degenerate T0 (no simple tangency)");
  F.tangent_point = -g.coeff(0) / g.coeff(1);
  QPoly sq = g * g * QPoly::constant(Rat(1) / (g.lead() * g.lead()));
  QPoly lin = F.Fplus / sq;
  if (!(lin * sq == F.Fplus)) throw AlgebraError("tangent_fibration: square factor does not divide");
  F.quartic = lin * F.Fminus;
  F.has_linear_factor = lin.degree() == 1;
  if (sgn(F.Fminus(F.tangent_point)) == 0) throw AlgebraError("tangent_fibration: degenerate T0 (F- through the tangency)");
  return F;
}

/// Rational points (u : v : w, y) on the fibre with y != 0, by a search over
/// s = n/d with |n|, d <= height.
inline std::vector<ZStarPoint> fibre_points(const TangentFibre& F, long height, std::size_t want = 1) {
  std::vector<ZStarPoint> out;
  for (long h = 1; h <= height && out.size() < want; ++h)
    for (long n = -h; n <= h && out.size() < want; ++n)
      for (long d : {h, std::labs(n) == h ? 0L : -1L}) {
        // pairs (n, d) of height exactly h, each once
        if (d < 0) continue;
        if (d == 0 && n != 1) continue;
        if (d == h && int_gcd(Int(n), Int(d)) != 1) continue;
        if (d != h && std::labs(n) != h) continue;
        Rat s = d == 0 ? Rat(0) : Rat(n, d);
        Rat q = d == 0 ? F.quartic.lead() : F.quartic(s);
        Rat root;
        if (sgn(q) == 0 || !rat_sqrt(q, root)) continue;
        auto p = d == 0 ? F.line.at(Rat(1), Rat(0)) : F.line.at(s);
        ZStarPoint P{p[0], p[1], p[2], Rat(0)};
        auto [Fp, Fm] = branch_cubics(F.tc.base);
        std::vector<Rat> pt{P.u, P.v, P.w};
        Rat prod = Fp.eval(pt) * Fm.eval(pt);
        if (sgn(prod) == 0 || !rat_sqrt(prod, P.y)) continue;
        out.push_back(P);
      }
  return out;
}

/// The pair of curves above a point of Z* on the tangent fibre, with evidence
/// of congruence mod 2N.
inline std::optional<CongruencePair> end_to_end_pair(const TangentFibre& F, const ZStarPoint& P, unsigned bound = 500) {
  auto m = model_point(F.tc.base, P);
  if (!m) return std::nullopt;
  XAB p = inverse_map(F.tc.base, *m);
  if (sgn(Rat(4) * p.a * p.a * p.a + Rat(27) * p.b * p.b) == 0) return std::nullopt;
  KleinData K = klein_covariants(F.tc.base, p.a, p.b);
  WModel<Rat> E1 = WModel<Rat>::short_model(p.a, p.b), E2 = K.curve_at(p.x);
  if (sgn(E2.invariants().disc) == 0) return std::nullopt;
  CongruencePair cp = make_pair_evidence(E1, E2, F.tc.N2, F.tc.eps, bound);
  Rat q = model_disc_ratio(F.tc.base, *m);
  cp.disc_ratio_matches_model = sgn(q) != 0 && square_class(q) == square_class(cp.disc_ratio);
  return cp;
}

struct FoundPair {
  Rat T0;
  ZStarPoint point;
  CongruencePair pair;
};

/// Walks T0 = n/d by height and collects pairs with full evidence (traces
/// agree mod 2N, square discriminant ratio, distinct j).
inline std::vector<FoundPair> find_congruent_pairs(int N2, int eps, std::size_t want, long t_height = 12, long s_height = 80,
                                                   unsigned bound = 500) {
  std::vector<Rat> Ts;
  for (long d = 1; d <= t_height; ++d)
    for (long n = -t_height; n <= t_height; ++n)
      if (int_gcd(Int(n), Int(d)) == 1) Ts.emplace_back(n, d);
  auto height = [](const Rat& t) { return std::max(Int(abs(t.get_num())), Int(t.get_den())); };
  std::stable_sort(Ts.begin(), Ts.end(), [&](const Rat& x, const Rat& y) { return height(x) < height(y); });
  std::vector<FoundPair> out;
  for (const Rat& T : Ts) {
    if (out.size() >= want) break;
    std::optional<TangentFibre> F;
    try {
      F = tangent_fibration(N2, eps, T);
    } catch (const AlgebraError&) {
      continue;
    }
    for (auto& P : fibre_points(*F, s_height, 8)) {
      auto cp = end_to_end_pair(*F, P, bound);
      if (!cp || !cp->evidence.ok || !cp->disc_ratio_square || cp->j1 == cp->j2) continue;
      out.push_back({T, P, *cp});
      break;
    }
  }
  return out;
}

// --- data shipped without a test ---------------------------------------------

/// The j-invariant families on F+ = 0 for the three base cases, as printed
/// (the parametrisation of the cubic is not).
inline Rat j_family(KleinCase c, const Rat& T) {
  Rat num, den;
  if (c == KleinCase::C32) {
    num = 27 * (T - 3) * (T - 3) * (T - 3) * (T + 1) * (T + 1) * (T + 1);
    den = T * T * T;
  } else if (c == KleinCase::C51) {
    Rat a = T + 5, b = T * T - 5, cc = T * T + 5 * T + 10, d = T * T + 5 * T + 5;
    num = a * a * a * b * b * b * cc * cc * cc;
    den = d * d * d * d * d;
  } else {
    Rat a = 2 * T + 1, b = 2 * T * T + 7 * T + 8, d = T * T + T - 1;
    num = 125 * T * a * a * a * b * b * b;
    den = d * d * d * d * d;
  }
  if (sgn(den) == 0) throw AlgebraError("j_family: pole");
  return num / den;
}

/// For (10,3): a root of X^3 - 3 G6 X - 2 G9 from a root T0 of
/// u T^3 - w T^2 - v T - v.  G6 and G9 are not printed in full, so this is
/// carried as data only.
inline Rat root_transport_10_3(const Rat& u, const Rat& v, const Rat& w, const Rat& T0) {
  return 3 * u * u * (8 * u - 3 * v - 4 * w) * T0 * T0 + 12 * u * (2 * u * v - 4 * u * w + v * w) * T0 - 16 * u * u * v + 6 * u * v * v + 8 * u * w * w - v * w * w + 4 * w * w * w;
}

}  // namespace zsurf
