#include <gtest/gtest.h>

#include <zsurf/moduli/catalog.hpp>
#include <zsurf/moduli/congruence.hpp>

#include <random>

using namespace zsurf;

namespace {

const KleinCase kCases[] = {KleinCase::C32, KleinCase::C51, KleinCase::C52};

std::vector<std::pair<Rat, Rat>> random_ab(unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 6);
  std::vector<std::pair<Rat, Rat>> out;
  while (static_cast<int>(out.size()) < count) {
    Rat a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (sgn(Rat(4) * a * a * a + Rat(27) * b * b) != 0) out.emplace_back(a, b);
  }
  return out;
}

WModel<Rat> legendre(const Rat& lam) {
  Rat z = 0;
  return WModel<Rat>{z, Rat(-(1 + lam)), z, lam, z};
}

}  // namespace

TEST(Moduli, CatalogEntries) {
  auto cat = catalog();
  EXPECT_EQ(cat.size(), 11u);  // six K3 and five properly elliptic surfaces
  int k3 = 0;
  for (auto& e : cat) k3 += e.kind == SurfaceKind::K3;
  EXPECT_EQ(k3, 6);
  for (auto& e : cat) {
    bool chain = e.id() == "6,5" || e.id() == "10,1" || e.id() == "10,3";
    EXPECT_EQ(e.moduli_route == "theorem3-chain", chain) << e.id();
  }
}

TEST(Moduli, AuxPolysOracle) {
  AuxPolys P = aux_polys(Rat(1), Rat(1));
  EXPECT_EQ(P.Delta, -31);
  EXPECT_EQ(P.h(Rat(1)), 11);
  EXPECT_EQ(P.j(Rat(1)), -47);
  EXPECT_EQ(P.k.degree(), 9);
  EXPECT_EQ(P.k.coeff(9), 1);
  EXPECT_EQ(P.k.coeff(7), 12);
  EXPECT_EQ(P.k.coeff(6), 84);
  QPoly three = QPoly::constant(Rat(3));
  EXPECT_EQ(P.fx.pow(3) - QPoly::constant(Rat(27)) * P.f * P.f, P.j - three * P.fx * P.h);
  EXPECT_THROW(aux_polys(Rat(-3), Rat(2)), AlgebraError);
}

TEST(Moduli, KleinSyzygiesAtRandomCurves) {
  for (auto c : kCases)
    for (auto& [a, b] : random_ab(7 + static_cast<unsigned>(c), 20)) {
      KleinData K = klein_covariants(c, a, b);
      EXPECT_TRUE(K.syzygy_holds());
      EXPECT_EQ(K.D.total_degree(), c == KleinCase::C32 ? 4 : 12);
    }
}

TEST(Moduli, KleinOracles) {
  KleinData K = klein_covariants(KleinCase::C32, Rat(1), Rat(0));
  EXPECT_EQ(-4 * K.A.pow(3) - 27 * K.B.pow(2), 256 * K.D.pow(3));
  KleinData L = klein_covariants(KleinCase::C51, Rat(1), Rat(1));
  EXPECT_EQ(4 * L.A.pow(3) + 27 * L.B.pow(2), 31 * L.D.pow(5));
}

TEST(Moduli, KleinFormThroughAuxPolys) {
  for (auto c : kCases) {
    AuxPolys P = aux_polys(Rat(2), Rat(-3));
    KleinData K = klein_covariants(c, Rat(2), Rat(-3));
    QPoly Dx = klein_D_dehomogenised(c, P);
    for (int x = -5; x <= 5; ++x) EXPECT_EQ(K.D.eval(std::vector<Rat>{Rat(x), Rat(1)}), Dx(Rat(x))) << case_name(c);
  }
}

TEST(Moduli, ForwardMapOracles) {
  ModelPoint m = forward_map(KleinCase::C32, Rat(1), Rat(1), Rat(1));
  EXPECT_EQ(m, (ModelPoint{Rat(-179), Rat(44), Rat(1331), Rat(-1830519)}));
  EXPECT_EQ(m[2] * m[3], Rat(-2436420789));
  EXPECT_TRUE(on_model(KleinCase::C51, forward_map(KleinCase::C51, Rat(1), Rat(1), Rat(1))));
  EXPECT_TRUE(on_model(KleinCase::C52, forward_map(KleinCase::C52, Rat(1), Rat(1), Rat(2))));
  XAB p = inverse_map(KleinCase::C32, m);
  EXPECT_EQ(p.x, 3267);
  EXPECT_EQ(weighted_scale(XAB{Rat(1), Rat(1), Rat(1)}, p), std::optional<Rat>(Rat(3267)));
}

TEST(Moduli, RoundTripAndJInvariance) {
  for (auto c : kCases)
    for (auto& [a, b] : random_ab(31 + static_cast<unsigned>(c), 8))
      for (int x = -2; x <= 2; ++x) {
        ModelPoint m = forward_map(c, a, b, Rat(x));
        XAB q = inverse_map(c, m);
        XAB p{Rat(x), a, b};
        if (sgn(q.x) == 0 && sgn(q.a) == 0 && sgn(q.b) == 0) continue;  // degenerate image
        auto lam = weighted_scale(p, q);
        ASSERT_TRUE(lam.has_value()) << case_name(c) << " x=" << x;
        Rat j1 = j_invariant(WModel<Rat>::short_model(a, b));
        if (sgn(q.a) != 0 || sgn(q.b) != 0) {
          EXPECT_EQ(j_invariant(WModel<Rat>::short_model(q.a, q.b)), j1);
        }
      }
}

TEST(Moduli, ForwardMapWeightedEquivariance) {
  // weights of the model coordinates and of the base scaling lambda^k
  struct W {
    KleinCase c;
    std::vector<int> w;
    int k;
  };
  std::vector<W> ws{{KleinCase::C32, {1, 1, 2, 3}, 6}, {KleinCase::C51, {1, 2, 2, 3, 4}, 3}, {KleinCase::C52, {1, 1, 1, 1}, 18}};
  for (auto& [c, w, k] : ws)
    for (Rat lam : {Rat(2), Rat(-3, 2), Rat(5, 7)}) {
      Rat a(3), b(-1), x(2);
      ModelPoint m = forward_map(c, a, b, x), ml = forward_map(c, lam * lam * a, lam * lam * lam * b, lam * x);
      Rat mu = power(lam, static_cast<unsigned>(k));
      for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(ml[i], power(mu, static_cast<unsigned>(w[i])) * m[i]) << case_name(c);
    }
}

TEST(Moduli, BranchCubicsAreCuspidal) {
  for (auto c : kCases) {
    auto [Fp, Fm] = branch_cubics(c);
    EXPECT_TRUE(is_cuspidal_cubic(Fp)) << case_name(c);
    EXPECT_TRUE(is_cuspidal_cubic(Fm)) << case_name(c);
  }
  EXPECT_FALSE(is_cuspidal_cubic(parse_mpoly("v^2 w - u^2 (u + w)", "uvw")));
  EXPECT_FALSE(is_cuspidal_cubic(parse_mpoly("v (v w - u^2)", "uvw")));
  EXPECT_FALSE(is_cuspidal_cubic(parse_mpoly("u^3 + v^3 + w^3", "uvw")));
}

TEST(Moduli, PairsFromPointsAreCongruent) {
  struct Case {
    KleinCase c;
    Rat a, b, x;
  };
  for (auto& [c, a, b, x] : std::vector<Case>{{KleinCase::C32, 1, 1, 1}, {KleinCase::C51, 1, 1, 0}, {KleinCase::C52, -2, 3, 1}}) {
    CongruencePair cp = congruent_pair_from_point(c, a, b, x, 200);
    EXPECT_TRUE(cp.evidence.ok) << case_name(c) << " fails at " << cp.evidence.first_failure;
    EXPECT_GT(cp.evidence.checked, 30);
    EXPECT_TRUE(cp.disc_ratio_matches_model) << case_name(c);
  }
}

TEST(Moduli, TwoCongruenceTest) {
  Rat j = j_invariant(WModel<Rat>::short_model(Rat(1), Rat(1)));
  EXPECT_TRUE(two_congruence_test(j, j));
  Rat j3 = j_invariant(legendre(Rat(3))), j5 = j_invariant(legendre(Rat(5)));
  EXPECT_TRUE(two_congruence_test(j3, j5));
  EXPECT_TRUE(two_congruence_test(j5, j3));
  EXPECT_FALSE(two_congruence_test(j, j3));
  EXPECT_EQ(two_congruence_test(j, j5), two_congruence_test(j5, j));
  EXPECT_THROW(two_congruence_test(Rat(0), j), AlgebraError);
  EXPECT_THROW(two_congruence_test(j, Rat(1728)), AlgebraError);
}

TEST(Moduli, TraceCongruenceCheck) {
  auto E = WModel<Rat>::short_model(Rat(1), Rat(1));
  EXPECT_TRUE(trace_congruence_check(E, E, 7, 300).ok);
  auto F = WModel<Rat>::short_model(Rat(2), Rat(3));
  auto ev = trace_congruence_check(E, F, 5, 500);
  EXPECT_FALSE(ev.ok);
  EXPECT_GT(ev.first_failure, 0u);
}

TEST(Moduli, Involutions) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-9, 9);
  for (auto c : kCases) {
    auto [Fp, Fm] = branch_cubics(c);
    int tested = 0;
    for (int it = 0; it < 4000 && tested < 20; ++it) {
      Rat u(d(rng)), v(d(rng)), w(d(rng));
      std::vector<Rat> pt{u, v, w};
      Rat prod = Fp.eval(pt) * Fm.eval(pt), y;
      if (sgn(prod) == 0 || !rat_sqrt(prod, y)) continue;
      ZStarPoint P{u, v, w, y};
      ZStarPoint Q;
      try {
        Q = involution2(c, P);
      } catch (const AlgebraError&) {
        continue;
      }
      ++tested;
      EXPECT_TRUE(on_double_cover(c, Q));
      ZStarPoint QQ = involution2(c, Q), I1 = involution1(involution1(P));
      EXPECT_TRUE(QQ.u == P.u && QQ.v == P.v && QQ.w == P.w && QQ.y == P.y);
      EXPECT_TRUE(I1.y == P.y);
      ZStarPoint a = involution1(involution2(c, P)), b = involution2(c, involution1(P));
      EXPECT_TRUE(a.u == b.u && a.v == b.v && a.w == b.w && a.y == b.y);
    }
    EXPECT_EQ(tested, 20) << case_name(c);
  }
}

TEST(Moduli, SecondInvolutionSwapsBranchCurves) {
  // F+(iota2 P) = (u~/u)^2 F-(P) for (5,2) and F+(u, v, -w) = F-(u, v, w) otherwise
  auto [Fp, Fm] = branch_cubics(KleinCase::C52);
  for (int u = 1; u <= 4; ++u)
    for (int v = -3; v <= 3; ++v)
      for (int w = -3; w <= 3; ++w) {
        Rat den = Rat(8 * u) - Rat(v - 4 * w);
        if (sgn(den) == 0) continue;
        Rat ut = Rat(u) * Rat(v - 4 * w) / den, q = ut / Rat(u);
        EXPECT_EQ(Fp.eval(std::vector<Rat>{ut, Rat(v), Rat(w)}), q * q * Fm.eval(std::vector<Rat>{Rat(u), Rat(v), Rat(w)}));
      }
  for (auto c : {KleinCase::C32, KleinCase::C51}) {
    auto [P, M] = branch_cubics(c);
    EXPECT_EQ(P.substitute({MPoly::var(3, 0), MPoly::var(3, 1), -MPoly::var(3, 2)}), M);
  }
}

TEST(Moduli, TangentLinesAreTangent) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 7);
  for (auto [N2, eps] : std::vector<std::pair<int, int>>{{6, 5}, {10, 1}, {10, 3}}) {
    int ok = 0;
    for (int it = 0; it < 200 && ok < 20; ++it) {
      Rat T(num(rng), den(rng));
      T.canonicalize();
      try {
        TangentFibre F = tangent_fibration(N2, eps, T);
        EXPECT_EQ(sgn(F.Fplus(F.tangent_point)), 0);
        EXPECT_EQ(sgn(F.Fplus.derivative()(F.tangent_point)), 0);
        EXPECT_EQ(F.quartic.degree(), 4);
        EXPECT_TRUE(F.has_linear_factor);
        ++ok;
      } catch (const AlgebraError&) {
      }
    }
    EXPECT_EQ(ok, 20) << N2 << "," << eps;
  }
  auto co = tangent_line(tangent_case(10, 3), Rat(2));
  EXPECT_EQ(co, (std::array<Rat, 3>{Rat(8), Rat(-3), Rat(-4)}));
}

TEST(Moduli, EndToEndPairs) {
  for (auto [N2, eps] : std::vector<std::pair<int, int>>{{6, 5}, {10, 1}, {10, 3}}) {
    auto found = find_congruent_pairs(N2, eps, 2);
    ASSERT_EQ(found.size(), 2u) << N2 << "," << eps;
    for (auto& f : found) {
      EXPECT_TRUE(f.pair.evidence.ok);
      EXPECT_EQ(f.pair.evidence.bound, 500u);
      EXPECT_TRUE(f.pair.disc_ratio_square);
      EXPECT_TRUE(f.pair.disc_ratio_matches_model);
      EXPECT_NE(f.pair.j1, f.pair.j2);
      // 2-congruence is part of congruence mod 2N
      if (sgn(f.pair.j1) != 0 && f.pair.j1 != 1728 && sgn(f.pair.j2) != 0 && f.pair.j2 != 1728) {
        EXPECT_TRUE(two_congruence_test(f.pair.j1, f.pair.j2));
      }
    }
  }
}

TEST(Moduli, JFamilies) {
  EXPECT_EQ(j_family(KleinCase::C32, Rat(2)), Rat(-729, 8));
  EXPECT_EQ(j_family(KleinCase::C52, Rat(1)), Rat(125 * 27 * 4913));
  EXPECT_EQ(j_family(KleinCase::C51, Rat(1)), Rat(216 * -64 * 4096, 161051));
  EXPECT_THROW(j_family(KleinCase::C32, Rat(0)), AlgebraError);
}

TEST(Moduli, EpsClass) {
  EXPECT_EQ(eps_class(10, 7), 3);
  EXPECT_EQ(eps_class(10, 9), 1);
  EXPECT_EQ(eps_class(6, 5), 5);
  EXPECT_EQ(eps_class(12, 7), 7);
  EXPECT_THROW(eps_class(10, 5), AlgebraError);
}
