#pragma once

// The published sections of the catalog surfaces, lifted over Q(T), over
// Q(sqrt d)(T), and reduced to F_p(T) together with the extra points mod p.

#include <zsurf/moduli/catalog.hpp>
#include <zsurf/surface/sections.hpp>

namespace zsurf {

inline std::vector<MWSection<Rat>> rational_sections(const SurfaceEntry& E, const ShortModel<Rat>& M) {
  std::vector<MWSection<Rat>> out;
  int i = 1;
  for (auto& xs : E.rational_x) {
    auto s = lift_section(M, parse_ratfunc(xs), Rat(1), "P" + std::to_string(i++));
    if (!s) throw AlgebraError(E.id() + ": x = " + xs + " does not lift over Q(T)");
    out.push_back(*s);
  }
  return out;
}

inline std::vector<MWSection<Rat>> geometric_sections(const SurfaceEntry& E, const ShortModel<Rat>& M) {
  std::vector<MWSection<Rat>> out;
  int i = static_cast<int>(E.rational_x.size()) + 1;
  for (auto& g : E.geometric) {
    auto s = lift_section(M, parse_ratfunc(g.x), Rat(g.d), "P" + std::to_string(i++));
    if (!s) throw AlgebraError(E.id() + ": x = " + g.x + " does not lift over Q(sqrt " + std::to_string(g.d) + ")(T)");
    out.push_back(*s);
  }
  return out;
}

/// Does the lifted section agree with the printed coefficient of sqrt(d) in y,
/// up to the sign of the square root?  Only meaningful when a1 = a3 = 0.
inline bool matches_printed_y(const MWSection<Rat>& P, const GeomSectionData& g) {
  if (!g.y) return true;
  QRatFunc y = parse_ratfunc(*g.y);
  QRatFunc w2 = y * QRatFunc::constant_from(Rat(2));
  return P.w == w2 || P.w == -w2;
}

/// Sections mod p: the reductions of the sections over Q(T) and of those geometric
/// sections whose field of definition embeds in F_p; `pencil` receives the
/// extra points printed for this prime.
struct ModPSections {
  std::vector<MWSection<FqElem>> fixed;
  std::vector<MWSection<FqElem>> pencil;
  std::vector<bool> pencil_y_elided;
  // geometric sections defined over F_{p^2}(T) only, kept on the quadratic
  // twist by a non-residue; Frobenius acts on them by -1
  std::vector<MWSection<FqElem>> twisted;

  std::vector<MWSection<FqElem>> all() const {
    auto v = fixed;
    v.insert(v.end(), pencil.begin(), pencil.end());
    v.insert(v.end(), twisted.begin(), twisted.end());
    return v;
  }
};

inline ModPSections mod_p_sections(const SurfaceEntry& E, const ShortModel<FqElem>& Mp) {
  const GFCtx& k = *Mp.zero().ctx;
  FqElem one = one_like(Mp.zero());
  ModPSections out;
  int i = 1;
  for (auto& xs : E.rational_x) {
    std::string name = "P" + std::to_string(i++);
    auto s = lift_section(Mp, reduce_mod(parse_ratfunc(xs), k), one, name);
    if (!s) throw AlgebraError(E.id() + ": reduction of " + name + " does not lift mod " + std::to_string(k.p()));
    out.fixed.push_back(*s);
  }
  for (auto& g : E.geometric) {
    std::string name = "P" + std::to_string(i++);
    auto s = lift_section_auto(Mp, reduce_mod(parse_ratfunc(g.x), k), name);
    if (!s) throw AlgebraError(E.id() + ": reduction of " + name + " does not lift mod " + std::to_string(k.p()));
    (s->d == one ? out.fixed : out.twisted).push_back(*s);
  }
  if (auto* fr = E.frob_at(k.p())) {
    for (auto& pt : fr->extra_points) {
      RatFunc<FqElem> x = reduce_mod(parse_ratfunc(pt.x), k);
      if (pt.y) {
        out.pencil.push_back(section_from_point(Mp, x, reduce_mod(parse_ratfunc(*pt.y), k), pt.name));
        out.pencil_y_elided.push_back(false);
      } else {
        auto s = lift_section(Mp, x, one, pt.name);
        if (!s) throw AlgebraError(E.id() + ": " + pt.name + " does not lift mod " + std::to_string(k.p()));
        out.pencil.push_back(*s);
        out.pencil_y_elided.push_back(true);
      }
    }
  }
  return out;
}

}  // namespace zsurf
