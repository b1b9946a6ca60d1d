#include <gtest/gtest.h>

#include <zsurf/ec/count.hpp>

#include <random>

using namespace zsurf;

namespace {

WModel<Rat> qshort(long a, long b) { return WModel<Rat>::short_model(Rat(a), Rat(b)); }

WModel<FqElem> fshort(const GFCtx& k, long a, long b) { return WModel<FqElem>::short_model(FqElem{&k, k.from_int(a)}, FqElem{&k, k.from_int(b)}); }

// Exhaustive enumeration of affine solutions plus the point at infinity.
long enumerate_points(const WModel<FqElem>& W) {
  const GFCtx& k = *W.a4.ctx;
  long n = 1;
  for (std::uint32_t x = 0; x < k.q(); ++x)
    for (std::uint32_t y = 0; y < k.q(); ++y)
      if (zsurf::is_zero(W.equation(FqElem{&k, x}, FqElem{&k, y}))) ++n;
  return n;
}

WModel<FqElem> random_model(const GFCtx& k, std::mt19937_64& rng, bool long_form) {
  auto r = [&] { return FqElem{&k, static_cast<std::uint32_t>(rng() % k.q())}; };
  FqElem z{&k, 0};
  for (;;) {
    WModel<FqElem> W{long_form ? r() : z, long_form ? r() : z, long_form ? r() : z, r(), r()};
    if (!W.singular()) return W;
  }
}

}  // namespace

TEST(Invariants, Examples) {
  EXPECT_EQ(qshort(1, 1).short_disc(), Rat(-31));
  EXPECT_EQ(*qshort(-1, 0).invariants().j, Rat(1728));
  EXPECT_EQ(*qshort(0, 1).invariants().j, Rat(0));
  EXPECT_EQ(qshort(1, 1).invariants().disc, Rat(-16 * 31));
  EXPECT_FALSE(qshort(0, 0).invariants().j.has_value());
}

TEST(Invariants, DiscriminantIdentities) {
  std::mt19937_64 rng(1);
  auto k = prime_field(101);
  for (int i = 0; i < 100; ++i) {
    auto r = [&] { return make_rat(static_cast<long>(rng() % 61) - 30, static_cast<long>(rng() % 9) + 1); };
    WModel<Rat> W{r(), r(), r(), r(), r()};
    auto I = W.invariants();
    EXPECT_EQ(Rat(1728) * I.disc, I.c4 * I.c4 * I.c4 - I.c6 * I.c6);
    EXPECT_EQ(Rat(4) * I.b8, I.b2 * I.b6 - I.b4 * I.b4);
    auto V = random_model(*k, rng, true);
    auto J = V.invariants();
    EXPECT_EQ(int_like(J.disc, 1728) * J.disc, J.c4 * J.c4 * J.c4 - J.c6 * J.c6);
  }
}

TEST(GroupLaw, Examples) {
  auto W = qshort(-1, 0);
  auto O = CurvePoint<Rat>::infinity();
  auto P = CurvePoint<Rat>::affine(Rat(0), Rat(0));
  auto Q = CurvePoint<Rat>::affine(Rat(1), Rat(0));
  EXPECT_EQ(add_points(W, P, O), P);
  EXPECT_TRUE(add_points(W, P, P).inf);
  EXPECT_EQ(add_points(W, P, Q), CurvePoint<Rat>::affine(Rat(-1), Rat(0)));
}

TEST(GroupLaw, RationalPointsStayOnLongModel) {
  // y^2 + y = x^3 - x, generator (0, 0) of infinite order
  WModel<Rat> W{Rat(0), Rat(0), Rat(1), Rat(-1), Rat(0)};
  auto P = CurvePoint<Rat>::affine(Rat(0), Rat(0));
  auto Q = P;
  for (int n = 2; n <= 8; ++n) {
    Q = add_points(W, Q, P);
    ASSERT_TRUE(on_curve(W, Q));
    EXPECT_EQ(Q, scalar_mul(W, n, P));
  }
  EXPECT_EQ(scalar_mul(W, 5, P).x, make_rat(1, 4));
}

TEST(GroupLaw, AssociativityAndOrderOverF101) {
  auto k = prime_field(101);
  std::mt19937_64 rng(4);
  for (int c = 0; c < 5; ++c) {
    auto W = random_model(*k, rng, true);
    auto S = W.short_from_c4c6();
    Int n = count_points_naive(W);
    auto pts = [&] {
      for (;;) {
        auto P = detail::random_point(S, rng);
        if (P) return *P;
      }
    };
    for (int i = 0; i < 50; ++i) {
      auto P = pts(), Q = pts(), R = pts();
      EXPECT_EQ(add_points(S, add_points(S, P, Q), R), add_points(S, P, add_points(S, Q, R)));
      EXPECT_TRUE(scalar_mul(S, n, P).inf);
    }
    EXPECT_EQ(count_points_naive(S), n);
  }
}

TEST(CountNaive, Examples) {
  EXPECT_EQ(count_points_naive(fshort(*prime_field(5), 1, 0)), 4);
  EXPECT_EQ(count_points_naive(fshort(*prime_field(7), -1, 0)), 8);
  EXPECT_EQ(count_points_naive(fshort(*prime_field(7), 0, 1)), 12);
}

TEST(CountNaive, AgreesWithEnumeration) {
  std::mt19937_64 rng(9);
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, int>>{{5, 1}, {7, 1}, {13, 1}, {5, 2}, {7, 2}}) {
    auto k = build_extension(p, r);
    for (int i = 0; i < 10; ++i) {
      auto W = random_model(*k, rng, true);
      EXPECT_EQ(count_points_naive(W), enumerate_points(W));
    }
  }
  // singular cubic with a node: each point counted once
  auto k = prime_field(7);
  auto N = fshort(*k, -3, 2);
  EXPECT_EQ(count_points_naive(N), enumerate_points(N));
}

TEST(CountBsgs, Examples) {
  auto k = prime_field(1009);
  auto W = fshort(*k, 1, 0);
  EXPECT_EQ(count_points_bsgs(W, 0), count_points_naive(W));
  auto k4 = build_extension(5, 4);
  auto V = fshort(*k4, 0, 1);
  EXPECT_EQ(count_points_bsgs(V, 0), count_points_naive(V));
}

TEST(CountBsgs, AgreesWithNaiveOnRandomCurves) {
  for (auto [p, r] : std::vector<std::pair<std::uint32_t, int>>{{521, 1}, {5, 4}, {7, 3}}) {
    auto k = build_extension(p, r);
    std::mt19937_64 rng(p * 10 + static_cast<std::uint64_t>(r));
    double s = 2 * std::sqrt(static_cast<double>(k->q()));
    int fallbacks = 0;
    for (int i = 0; i < 200; ++i) {
      auto W = random_model(*k, rng, i % 2 == 0);
      bool naive = false;
      Int n = count_points_bsgs(W, 0, static_cast<std::uint64_t>(i) + 1, &naive);
      fallbacks += naive;
      EXPECT_EQ(n, count_points_naive(W));
      double a = static_cast<double>(k->q()) + 1 - n.get_d();
      EXPECT_LE(std::abs(a), s);
    }
    EXPECT_EQ(fallbacks, 0) << k->q();
  }
}

TEST(Trace, Examples) {
  WModel<Rat> W{Rat(0), Rat(0), Rat(1), Rat(-1), Rat(0)};
  auto k5 = prime_field(5);
  WModel<FqElem> W5{FqElem{k5.get(), 0}, FqElem{k5.get(), 0}, FqElem{k5.get(), 1}, FqElem{k5.get(), 4}, FqElem{k5.get(), 0}};
  EXPECT_EQ(trace_of_frobenius(W, 5), 6 - enumerate_points(W5));
  EXPECT_EQ(trace_of_frobenius(qshort(1, 0), 7), 0);
  EXPECT_EQ(trace_of_frobenius(qshort(0, 1), 7), -4);
  EXPECT_THROW(trace_of_frobenius(qshort(-1, 0), 2), AlgebraError);
  EXPECT_THROW(trace_of_frobenius(qshort(0, 7), 7), AlgebraError);
}

TEST(Trace, HasseBoundAndModelIndependence) {
  // the same curve presented with a non-minimal scaling at 5 and 7
  WModel<Rat> W{Rat(1), Rat(-1), Rat(0), Rat(-3), Rat(5)};
  auto S = W.short_from_c4c6();
  auto Big = WModel<Rat>::short_model(S.a4 * Rat(35 * 35 * 35 * 35), S.a6 * Rat(35L * 35 * 35 * 35 * 35 * 35));
  for (std::uint32_t p = 5; p <= 500; ++p) {
    if (!is_prime_u64(p) || !good_reduction_at(W, Int(p))) continue;
    long a = trace_of_frobenius(W, p);
    EXPECT_LE(static_cast<double>(a * a), 4.0 * p);
    EXPECT_EQ(a, trace_of_frobenius(Big, p));
  }
}
