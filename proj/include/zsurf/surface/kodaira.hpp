#pragma once

// Singular fibres of elliptic surfaces: Tate's algorithm on the minimal short
// model at every place of k(T), Galois action on fibre components, and the
// Shioda-Tate bookkeeping.

#include <zsurf/algebra/cyclotomic.hpp>
#include <zsurf/ff/residue.hpp>
#include <zsurf/surface/model.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zsurf {

enum class KodairaKind { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };

struct KodairaSymbol {
  KodairaKind kind = KodairaKind::I;
  int n = 0;

  std::string str() const {
    switch (kind) {
      case KodairaKind::I: return "I" + std::to_string(n);
      case KodairaKind::Istar: return "I" + std::to_string(n) + "*";
      case KodairaKind::II: return "II";
      case KodairaKind::III: return "III";
      case KodairaKind::IV: return "IV";
      case KodairaKind::IVstar: return "IV*";
      case KodairaKind::IIIstar: return "III*";
      case KodairaKind::IIstar: return "II*";
    }
    return "?";
  }
  int euler() const {
    switch (kind) {
      case KodairaKind::I: return n;
      case KodairaKind::Istar: return n + 6;
      case KodairaKind::II: return 2;
      case KodairaKind::III: return 3;
      case KodairaKind::IV: return 4;
      case KodairaKind::IVstar: return 8;
      case KodairaKind::IIIstar: return 9;
      case KodairaKind::IIstar: return 10;
    }
    return 0;
  }
  int components() const {
    switch (kind) {
      case KodairaKind::I: return std::max(n, 1);
      case KodairaKind::Istar: return n + 5;
      case KodairaKind::II: return 1;
      case KodairaKind::III: return 2;
      case KodairaKind::IV: return 3;
      case KodairaKind::IVstar: return 7;
      case KodairaKind::IIIstar: return 8;
      case KodairaKind::IIstar: return 9;
    }
    return 0;
  }
  int simple_components() const {
    switch (kind) {
      case KodairaKind::I: return std::max(n, 1);
      case KodairaKind::Istar: return 4;
      case KodairaKind::II: return 1;
      case KodairaKind::III: return 2;
      case KodairaKind::IV: return 3;
      case KodairaKind::IVstar: return 3;
      case KodairaKind::IIIstar: return 2;
      case KodairaKind::IIstar: return 1;
    }
    return 0;
  }
  bool multiplicative() const { return kind == KodairaKind::I && n > 0; }
  bool good() const { return kind == KodairaKind::I && n == 0; }
  friend bool operator==(const KodairaSymbol& a, const KodairaSymbol& b) { return a.kind == b.kind && a.n == b.n; }
  friend bool operator<(const KodairaSymbol& a, const KodairaSymbol& b) { return a.str() < b.str(); }
};

template <class K>
struct Place {
  bool inf = false;
  Poly<K> pi;  // monic irreducible; for the infinite place, the uniformiser s = 1/T

  int degree() const { return inf ? 1 : pi.degree(); }
  std::string str() const { return inf ? "infinity" : pi.str("T"); }
};

template <class K>
struct FiberData {
  Place<K> place;
  KodairaSymbol symbol;
  int m_t = 1, c_t = 1, e_t = 0;
  int vA = 0, vB = 0, vD = 0;
  // Frobenius (for k finite; the Galois action of the residue field otherwise)
  // on the non-identity components of one geometric fibre over the place
  bool action_known = false;
  std::vector<int> cycles;
  int mult_sign = 0;    // +1 split multiplicative, -1 non-split, 0 otherwise
  int cubic_roots = -1;  // I0*: roots of the residual cubic in the residue field
  std::string splitting;

  int degree() const { return place.degree(); }
};

template <class K>
struct SurfaceAnalysis {
  ShortModel<K> model;
  std::vector<FiberData<K>> fibers;  // bad places only
  int m = 0;
  int trivial_rank = 2;
  int euler_total = 0;

  int b2() const { return 12 * m - 2; }
  int hodge_bound() const { return 10 * m; }
};

namespace detail {

// Residue-field tests at a place: whether an element is a square, and how many
// roots a cubic x^3 + a x + b has.  Over Q only degree-one places are handled.
template <class K>
struct ResidueOps;

template <>
struct ResidueOps<Rat> {
  bool available;
  Rat root;
  explicit ResidueOps(const QPoly& pi) : available(pi.degree() == 1), root(available ? Rat(-pi.coeff(0) / pi.coeff(1)) : Rat(0)) {}
  Rat res(const QPoly& f) const { return f(root); }
  bool is_square(const QPoly& f) const { return is_rat_square(res(f)); }
  int cubic_roots(const QPoly& a, const QPoly& b) const {
    QPoly c({res(b), res(a), Rat(0), Rat(1)});
    return static_cast<int>(roots_Q(c).size());
  }
};

template <>
struct ResidueOps<FqElem> {
  bool available = true;
  ResCtx ctx;
  explicit ResidueOps(const FqPoly& pi) : ctx(pi.zero_elem().ctx, pi) {}
  bool is_square(const FqPoly& f) const { return field_chi(residue(ctx, f)) == 1; }
  int cubic_roots(const FqPoly& a, const FqPoly& b) const {
    ResElem ra = residue(ctx, a), rb = residue(ctx, b);
    ResElem z = zero_like(ra), o = one_like(ra);
    Poly<ResElem> c({rb, ra, z, o}, z);
    return count_roots_ff(c);
  }
};

inline std::vector<int> ones(int k) { return std::vector<int>(static_cast<std::size_t>(k), 1); }

}  // namespace detail

/// Tate's algorithm at pi for y^2 = x^3 + A x + B (minimal at pi).
template <class K>
FiberData<K> tate_local(const Poly<K>& A, const Poly<K>& B, const Place<K>& place) {
  const Poly<K>& pi = place.pi;
  if (characteristic(A.zero_elem()) == 2 || characteristic(A.zero_elem()) == 3) throw AlgebraError("tate_local: residue characteristic 2 or 3");
  FiberData<K> F;
  F.place = place;
  constexpr int big = 1 << 20;
  F.vA = detail::val_or(A, pi, big);
  F.vB = detail::val_or(B, pi, big);
  Poly<K> D = int_like(A, 4) * A * A * A + int_like(A, 27) * B * B;
  if (D.is_zero()) throw AlgebraError("tate_local: singular generic fibre");
  F.vD = D.valuation(pi);
  if (F.vA >= 4 && F.vB >= 6) throw AlgebraError("tate_local: model not minimal at " + place.str());
  KodairaSymbol s;
  if (F.vD == 0) {
    s = {KodairaKind::I, 0};
  } else if (F.vA == 0) {
    s = {KodairaKind::I, F.vD};
  } else if (F.vD == 2) {
    s = {KodairaKind::II, 0};
  } else if (F.vD == 3) {
    s = {KodairaKind::III, 0};
  } else if (F.vD == 4) {
    s = {KodairaKind::IV, 0};
  } else if (F.vD == 6 && F.vA >= 2 && F.vB >= 3) {
    s = {KodairaKind::Istar, 0};
  } else if (F.vA == 2 && F.vB == 3) {
    s = {KodairaKind::Istar, F.vD - 6};
  } else if (F.vD == 8) {
    s = {KodairaKind::IVstar, 0};
  } else if (F.vD == 9) {
    s = {KodairaKind::IIIstar, 0};
  } else if (F.vD == 10) {
    s = {KodairaKind::IIstar, 0};
  } else {
    throw AlgebraError("tate_local: unexpected valuations at " + place.str());
  }
  F.symbol = s;
  F.m_t = s.components();
  F.c_t = s.simple_components();
  F.e_t = s.euler();

  // Galois action on the non-identity components
  detail::ResidueOps<K> R(pi);
  auto red = [&](const Poly<K>& f, int k) { return f.is_zero() ? f : f.exact_div(pi.pow(static_cast<unsigned>(k))); };
  auto set_swap = [&](bool split, std::vector<int> fixed_part, std::vector<int> swapped_part) {
    F.action_known = true;
    F.cycles = split ? fixed_part : swapped_part;
    F.splitting = split ? "split" : "non-split";
  };
  switch (s.kind) {
    case KodairaKind::I:
      if (s.n == 0) break;
      if (!R.available) break;
      {
        bool split = R.is_square(int_like(B, 6) * B);
        std::vector<int> ns;
        for (int i = 1; 2 * i <= s.n; ++i) ns.push_back(2 * i == s.n ? 1 : 2);
        set_swap(split, detail::ones(s.n - 1), ns);
        F.mult_sign = split ? 1 : -1;
      }
      break;
    case KodairaKind::II:
      F.action_known = true;
      break;
    case KodairaKind::III:
      F.action_known = true;
      F.cycles = {1};
      break;
    case KodairaKind::IV:
      if (R.available) set_swap(R.is_square(red(B, 2)), {1, 1}, {2});
      break;
    case KodairaKind::IVstar:
      if (R.available) set_swap(R.is_square(red(B, 4)), detail::ones(6), {1, 1, 2, 2});
      break;
    case KodairaKind::IIIstar:
      F.action_known = true;
      F.cycles = detail::ones(7);
      break;
    case KodairaKind::IIstar:
      F.action_known = true;
      F.cycles = detail::ones(8);
      break;
    case KodairaKind::Istar:
      if (s.n == 0 && R.available) {
        int r = R.cubic_roots(red(A, 2), red(B, 3));
        F.cubic_roots = r;
        F.action_known = true;
        if (r == 3)
          F.cycles = {1, 1, 1, 1};
        else if (r == 1)
          F.cycles = {1, 1, 2};
        else
          F.cycles = {1, 3};
        F.splitting = std::to_string(r) + " roots";
      }
      break;
  }
  return F;
}

template <class K>
Poly<K> uniformiser_at_infinity(const K& z) {
  return Poly<K>::x(one_like(z));
}

/// Bad fibres of the surface over every place of P^1 over k, with the
/// Euler-number check sum e_t = 12 m.
template <class K>
SurfaceAnalysis<K> analyze_model(const ShortModel<K>& M) {
  SurfaceAnalysis<K> S;
  S.model = M;
  Poly<K> D = M.disc();
  for (auto& [pi, mult] : irreducible_factors(D)) {
    (void)mult;
    Place<K> pl{false, pi};
    S.fibers.push_back(tate_local(M.A, M.B, pl));
  }
  Place<K> inf{true, uniformiser_at_infinity(M.zero())};
  auto Finf = tate_local(M.A_inf(), M.B_inf(), inf);
  if (!Finf.symbol.good()) S.fibers.push_back(Finf);
  S.m = M.e;
  for (auto& F : S.fibers) {
    S.euler_total += F.degree() * F.e_t;
    S.trivial_rank += F.degree() * (F.m_t - 1);
  }
  if (S.euler_total != 12 * S.m) throw AlgebraError("analyze_fibers: Euler numbers sum to " + std::to_string(S.euler_total) + ", expected " + std::to_string(12 * S.m));
  return S;
}

template <class K>
SurfaceAnalysis<K> analyze_fibers(const PolyModel<K>& W) {
  return analyze_model(minimal_short_model(W));
}

/// Shioda-Tate: rank NS = rank MW + 2 + sum (m_t - 1).
template <class K>
int shioda_tate_ns_rank(const SurfaceAnalysis<K>& S, int mw_rank) {
  if (mw_rank < 0) throw AlgebraError("shioda_tate_ns_rank: negative rank");
  return mw_rank + S.trivial_rank;
}

/// rank of E over kbar(T) allowed by an upper bound rho_p on NS.
template <class K>
int geometric_mw_bound(const SurfaceAnalysis<K>& S, int rho_p) {
  int r = rho_p - S.trivial_rank;
  if (r < 0) throw AlgebraError("geometric_mw_bound: inconsistent inputs");
  return r;
}

/// Bracketed fibre multiset: one entry per place, "(I2,I2)" for a place of
/// degree two carrying I2 fibres, sorted.
template <class K>
std::vector<std::string> fiber_multiset(const SurfaceAnalysis<K>& S) {
  std::vector<std::string> out;
  for (auto& F : S.fibers) {
    int d = F.degree();
    if (d == 1) {
      out.push_back(F.symbol.str());
    } else {
      std::string s = "(";
      for (int i = 0; i < d; ++i) s += (i ? "," : "") + F.symbol.str();
      out.push_back(s + ")");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Geometric fibre configuration: symbol -> number of geometric fibres.
template <class K>
std::map<std::string, int> geometric_fibers(const SurfaceAnalysis<K>& S) {
  std::map<std::string, int> out;
  for (auto& F : S.fibers) out[F.symbol.str()] += F.degree();
  return out;
}

inline QPoly x_pow_minus_one(int k) {
  QPoly f = QPoly::monomial(Rat(1), static_cast<std::size_t>(k));
  return f - QPoly::constant(Rat(1));
}

/// Characteristic polynomial of Frobenius on the trivial lattice (zero section,
/// fibre class, non-identity fibre components), times (x - 1) for each
/// independent section over F_p(T) and (x + 1) for each independent section
/// on the nontrivial quadratic twist.  Constant term normalised to 1.
inline QPoly trivial_lattice_charpoly(const SurfaceAnalysis<FqElem>& S, int sections_plus = 0, int sections_minus = 0) {
  QPoly f = x_pow_minus_one(1) * x_pow_minus_one(1);
  for (auto& F : S.fibers) {
    if (!F.action_known) throw AlgebraError("trivial_lattice_charpoly: unknown Galois action at " + F.place.str());
    for (int c : F.cycles) f = f * x_pow_minus_one(F.degree() * c);
  }
  for (int i = 0; i < sections_plus; ++i) f = f * x_pow_minus_one(1);
  for (int i = 0; i < sections_minus; ++i) f = f * (qx() + 1L);
  return f * (Rat(1) / f.coeff(0));
}

}  // namespace zsurf
