#include <gtest/gtest.h>

#include <zsurf/surface/catalog_sections.hpp>
#include <zsurf/zeta/counting.hpp>

#include <map>

using namespace zsurf;

namespace {

struct Lifted {
  SurfaceAnalysis<Rat> S;
  std::vector<MWSection<Rat>> q, geom;
};

const Lifted& lifted(const SurfaceEntry& E) {
  static std::map<std::string, Lifted> cache;
  auto it = cache.find(E.id());
  if (it != cache.end()) return it->second;
  Lifted L{analyze_fibers(E.model()), {}, {}};
  L.q = rational_sections(E, L.S.model);
  L.geom = geometric_sections(E, L.S.model);
  return cache.emplace(E.id(), std::move(L)).first->second;
}

// regulators of the published sections over Q and over Qbar
const std::map<std::string, std::pair<Rat, Rat>> kRegulators = {
    {"6,5", {Rat(1, 12), Rat(1, 12)}}, {"7,3", {Rat(7, 15), Rat(7, 15)}}, {"8,3", {Rat(1, 3), Rat(2, 9)}},
    {"8,5", {Rat(2, 3), Rat(2)}},      {"9,1", {Rat(3, 4), Rat(9, 4)}},   {"12,1", {Rat(2), Rat(2)}},
    {"8,7", {Rat(1, 6), Rat(1, 4)}},   {"9,2", {Rat(1, 2), Rat(1, 2)}},   {"10,1", {Rat(1, 5), Rat(1, 5)}},
    {"10,3", {Rat(5, 12), Rat(5, 8)}}, {"11,1", {Rat(11, 12), Rat(11, 12)}}};

}  // namespace

TEST(Sections, PublishedSectionsLift) {
  for (auto& E : catalog()) {
    const Lifted& L = lifted(E);
    EXPECT_EQ(L.q.size(), E.rational_x.size()) << E.id();
    EXPECT_EQ(L.geom.size(), E.geometric.size()) << E.id();
    for (std::size_t i = 0; i < L.geom.size(); ++i) EXPECT_TRUE(matches_printed_y(L.geom[i], E.geometric[i])) << E.id() << " " << L.geom[i].label;
  }
}

TEST(Sections, RanksOverQAndQbar) {
  for (auto& E : catalog()) {
    const Lifted& L = lifted(E);
    HeightPairing<Rat> H(L.S);
    auto all = L.q;
    all.insert(all.end(), L.geom.begin(), L.geom.end());
    EXPECT_EQ(independent_rank(H, L.q), E.rank_q) << E.id();
    EXPECT_EQ(independent_rank(H, all), E.rank_qbar) << E.id();
  }
}

TEST(Sections, Regulators) {
  for (auto& E : catalog()) {
    const Lifted& L = lifted(E);
    HeightPairing<Rat> H(L.S);
    auto all = L.q;
    all.insert(all.end(), L.geom.begin(), L.geom.end());
    auto [rq, rqbar] = kRegulators.at(E.id());
    EXPECT_EQ(regulator(H, L.q), rq) << E.id();
    EXPECT_EQ(regulator(H, all), rqbar) << E.id();
  }
}

TEST(Sections, HeightPairingIsBilinearAndSymmetric) {
  for (auto& E : catalog()) {
    const Lifted& L = lifted(E);
    if (L.q.size() < 2) continue;
    HeightPairing<Rat> H(L.S);
    const auto &P = L.q[0], &Q = L.q[1];
    EXPECT_EQ(H.pairing(P, Q), H.pairing(Q, P)) << E.id();
    EXPECT_EQ(H.pairing(P, P), H.height(P)) << E.id();
    // h(2P) = 4 h(P) through the group law on the curve
    auto C = twisted_curve(L.S.model, P.d);
    auto P2 = add_points(C, twisted_point(L.S.model, P), twisted_point(L.S.model, P));
    EXPECT_EQ(H.height(P2, P.d), 4 * H.height(P)) << E.id();
    auto PQ = add_points(C, twisted_point(L.S.model, P), twisted_point(L.S.model, Q));
    EXPECT_EQ(H.height(PQ, P.d), H.height(P) + H.height(Q) + 2 * H.pairing(P, Q)) << E.id();
  }
}

TEST(Sections, HeightsArePositiveAndSectionsInDifferentTwistsOrthogonal) {
  for (auto& E : catalog()) {
    const Lifted& L = lifted(E);
    HeightPairing<Rat> H(L.S);
    for (auto& P : L.q) EXPECT_GT(H.height(P), 0) << E.id() << " " << P.label;
    for (auto& G : L.geom) {
      EXPECT_GT(H.height(G), 0) << E.id() << " " << G.label;
      for (auto& P : L.q) EXPECT_EQ(H.pairing(P, G), 0) << E.id();
    }
  }
}

TEST(Sections, TorsionOrders) {
  for (auto& E : catalog()) {
    const Lifted& L = lifted(E);
    TorsionInfo T = torsion_order(L.S.model);
    EXPECT_EQ(T.lower, T.upper) << E.id();
    EXPECT_EQ(T.order, E.torsion) << E.id();
  }
}

TEST(Sections, TwoTorsionHasHeightZero) {
  // the 2-torsion section of Z(8,5) sits on y = 0 of the short model
  const SurfaceEntry& E = find_surface("8,5");
  const Lifted& L = lifted(E);
  HeightPairing<Rat> H(L.S);
  TorsionInfo T = torsion_order(L.S.model);
  ASSERT_FALSE(T.two_torsion_x.empty());
  for (auto& X : T.two_torsion_x) {
    auto P = CurvePoint<QRatFunc>::affine(QRatFunc(X), QRatFunc::constant_from(Rat(0)));
    EXPECT_EQ(H.height(P, Rat(1)), 0);
  }
}

TEST(Sections, NonSectionIsRejected) {
  const SurfaceEntry& E = find_surface("8,3");
  const Lifted& L = lifted(E);
  EXPECT_FALSE(lift_section(L.S.model, parse_ratfunc("T"), Rat(1)).has_value());
}

TEST(Sections, PencilFormsModP) {
  for (auto& E : catalog())
    for (auto& f : E.forms) {
      auto k = prime_field(f.p);
      auto Sp = analyze_mod_p(E.model(), *k);
      HeightPairing<FqElem> Hp(Sp);
      auto ms = mod_p_sections(E, Sp.model);
      ASSERT_EQ(ms.pencil.size(), 2u) << E.id() << " p=" << f.p;
      BinaryForm F = regulator_form(Hp, ms.fixed, ms.pencil[0], ms.pencil[1]);
      EXPECT_EQ(F.a, f.scale * f.a) << E.id() << " p=" << f.p;
      EXPECT_EQ(F.c, f.scale * f.c) << E.id() << " p=" << f.p;
      // an elided y leaves the sign of that point, hence of b, undetermined
      bool elided = ms.pencil_y_elided[0] || ms.pencil_y_elided[1];
      Rat b = f.scale * f.b;
      if (elided)
        EXPECT_TRUE(F.b == b || F.b == -b) << E.id() << " p=" << f.p;
      else
        EXPECT_EQ(F.b, b) << E.id() << " p=" << f.p;
    }
}
