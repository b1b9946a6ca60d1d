#include <gtest/gtest.h>

#include <zsurf/algebra/cyclotomic.hpp>
#include <zsurf/algebra/factor_q.hpp>
#include <zsurf/algebra/mpoly.hpp>
#include <zsurf/algebra/qform.hpp>
#include <zsurf/algebra/quad_ext.hpp>
#include <zsurf/algebra/ratfunc.hpp>
#include <zsurf/algebra/square_class.hpp>

#include <cmath>
#include <random>

using namespace zsurf;

namespace {

QPoly xm1_pow(int k) { return (qx() - 1L).pow(static_cast<unsigned>(k)); }
QPoly xp1_pow(int k) { return (qx() + 1L).pow(static_cast<unsigned>(k)); }
QPoly quad(const Rat& c) { return QPoly({Rat(1), c, Rat(1)}); }

}  // namespace

TEST(Rat, CanonicalForm) {
  Rat r = make_rat(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(to_string(parse_rat("10/4")), "5/2");
  EXPECT_THROW(make_rat(1, 0), AlgebraError);
}

TEST(SquareClass, Examples) {
  EXPECT_EQ(square_class(Rat(1)).rep, 1);
  EXPECT_EQ(square_class(make_rat(96, 49)).rep, 6);
  EXPECT_EQ(square_class(make_rat(51, 25)).rep, 51);
  EXPECT_EQ(square_class(Rat(-24)).rep, -6);
  EXPECT_THROW(square_class(Rat(0)), AlgebraError);
}

TEST(SquareClass, InvariantUnderSquares) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    long a = static_cast<long>(rng() % 2000) - 1000, b = static_cast<long>(rng() % 500) + 1;
    long c = static_cast<long>(rng() % 300) + 1, d = static_cast<long>(rng() % 300) + 1;
    if (a == 0) continue;
    Rat q = make_rat(a, b), s = make_rat(c, d);
    EXPECT_EQ(square_class(q * s * s), square_class(q));
  }
}

TEST(Poly, ArithmeticAndGcd) {
  QPoly f = (qx() - 1L) * (qx() + 2L) * (qx() + 2L);
  QPoly g = (qx() + 2L) * (qx() - 5L);
  EXPECT_EQ(poly_gcd(f, g), qx() + 2L);
  EXPECT_EQ(f.derivative().degree(), 2);
  EXPECT_EQ(f(Rat(1)), 0);
  QPoly s, t;
  QPoly h = poly_xgcd(qx() * qx() + 1L, qx() - 3L, s, t);
  EXPECT_EQ(h, QPoly::constant(Rat(1)));
  EXPECT_EQ(s * (qx() * qx() + 1L) + t * (qx() - 3L), QPoly::constant(Rat(1)));
}

TEST(Poly, ResultantMatchesRootProduct) {
  // res(f, g) = prod over roots a of f of g(a) for monic f
  QPoly f = (qx() - 2L) * (qx() - 3L), g = qx() * qx() + 1L;
  EXPECT_EQ(poly_resultant(f, g), Rat(5 * 10));
  EXPECT_EQ(poly_discriminant(f), Rat(1));
}

TEST(Poly, CanonicalText) {
  QPoly f({Rat(1), make_rat(-6, 5), Rat(0), Rat(2)});
  EXPECT_EQ(f.str("x"), "2*x^3 - 6/5*x + 1");
}

TEST(Cyclotomic, CatalogRowTwelveOne) {
  QPoly f = xm1_pow(16) * xp1_pow(4) * quad(make_rat(6, 5));
  auto s = cyclotomic_split(f);
  EXPECT_EQ(s.g, xm1_pow(16) * xp1_pow(4));
  EXPECT_EQ(s.h, quad(make_rat(6, 5)));
  EXPECT_EQ(s.g * s.h, f);
}

TEST(Cyclotomic, CatalogRowNineOne) {
  QPoly phi3({Rat(1), Rat(1), Rat(1)});
  QPoly f = xm1_pow(16) * xp1_pow(2) * phi3 * quad(make_rat(7, 5));
  auto s = cyclotomic_split(f);
  EXPECT_EQ(s.h, quad(make_rat(7, 5)));
  EXPECT_TRUE(s.g.divides(f));
  EXPECT_TRUE(phi3.divides(s.g));
  EXPECT_EQ(s.g.degree(), 20);
}

TEST(Cyclotomic, Trivial) {
  auto s = cyclotomic_split(QPoly({Rat(-1), Rat(1)}) * Rat(-1));
  EXPECT_EQ(s.h.degree(), 0);
  EXPECT_THROW(cyclotomic_split(qx() + 2L), AlgebraError);
}

TEST(Cyclotomic, NoRootOfUnityLeftInH) {
  QPoly f = xm1_pow(4) * cyclotomic_poly(12) * cyclotomic_poly(7) * quad(make_rat(3, 7));
  auto s = cyclotomic_split(f);
  EXPECT_EQ(s.g * s.h, f);
  for (long d = 1; d <= 4 * f.degree(); ++d) EXPECT_EQ(poly_gcd(s.h, cyclotomic_poly(d)).degree(), 0) << d;
}

TEST(Cyclotomic, PhiValues) {
  EXPECT_EQ(cyclotomic_poly(1), qx() - 1L);
  EXPECT_EQ(cyclotomic_poly(6), QPoly({Rat(1), Rat(-1), Rat(1)}));
  EXPECT_EQ(cyclotomic_poly(12).degree(), 4);
}

// Brute-force oracle: z^2 = a x^2 + b y^2 primitive solvability modulo 27.
static int hilbert_bruteforce_mod27(long a, long b) {
  for (long x = 0; x < 27; ++x)
    for (long y = 0; y < 27; ++y)
      for (long z = 0; z < 27; ++z) {
        if (x % 3 == 0 && y % 3 == 0 && z % 3 == 0) continue;
        if (((z * z - a * x * x - b * y * y) % 27 + 27) % 27 == 0) return 1;
      }
  return -1;
}

TEST(Hilbert, Examples) {
  EXPECT_EQ(hilbert_symbol(Rat(1), Rat(7), place_prime(3)), 1);
  EXPECT_EQ(hilbert_symbol(Rat(1), Rat(-5), place_infinity()), 1);
  EXPECT_EQ(hilbert_symbol(Rat(-1), Rat(-1), place_infinity()), -1);
  EXPECT_EQ(hilbert_symbol(Rat(2), Rat(3), place_prime(3)), -1);
  EXPECT_EQ(hilbert_bruteforce_mod27(2, 3), -1);
  EXPECT_EQ(hilbert_symbol(Rat(-1), Rat(-1), place_prime(2)), -1);
}

TEST(Hilbert, AgreesWithBruteForceAtThree) {
  for (long a : {1, 2, 4, 5, 7, 3, 6, 12, 15})
    for (long b : {1, 2, 5, 7, 3, 6, 15, 21}) EXPECT_EQ(hilbert_symbol(Rat(a), Rat(b), place_prime(3)), hilbert_bruteforce_mod27(a, b)) << a << "," << b;
}

TEST(Hilbert, BilinearityAndProductFormula) {
  std::mt19937_64 rng(11);
  auto rnd = [&] {
    long v = 0;
    while (v == 0) v = static_cast<long>(rng() % 121) - 60;
    return v;
  };
  for (int it = 0; it < 200; ++it) {
    long a = rnd(), b1 = rnd(), b2 = rnd();
    std::vector<QPlace> places{place_infinity()};
    std::set<Int> ps{Int(2)};
    for (long v : {a, b1, b2})
      for (auto& [p, e] : factor_integer(Int(v))) ps.insert(p);
    for (auto& p : ps) places.push_back(QPlace{p});
    int prod = 1;
    for (auto& v : places) {
      EXPECT_EQ(hilbert_symbol(Rat(a), Rat(b1 * b2), v), hilbert_symbol(Rat(a), Rat(b1), v) * hilbert_symbol(Rat(a), Rat(b2), v));
      prod *= hilbert_symbol(Rat(a), Rat(b1), v);
    }
    EXPECT_EQ(prod, 1);
  }
}

TEST(Isotropy, Examples) {
  EXPECT_TRUE(is_isotropic_over_Q(QForm::diagonal({Rat(1), Rat(-1)})).isotropic);
  auto r = is_isotropic_over_Q(QForm::diagonal({Rat(1), Rat(1), Rat(1), Rat(1)}));
  EXPECT_FALSE(r.isotropic);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(r.witness->infinite());
  EXPECT_THROW(is_isotropic_over_Q(QForm::diagonal({Rat(1), Rat(0)})), AlgebraError);
}

TEST(Isotropy, RankFourFormFromRegulators) {
  QForm f = QForm::binary(make_rat(2, 75), Rat(7), Rat(-12), Rat(18));
  QForm g = QForm::binary(make_rat(1, 450), Rat(139), Rat(76), Rat(316));
  auto r = is_isotropic_over_Q(f.minus(g));
  EXPECT_FALSE(r.isotropic);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->p, 3);
}

namespace {

bool is_square_i64(__int128 v) {
  if (v < 0) return false;
  long long s = static_cast<long long>(std::sqrt(static_cast<long double>(v)));
  for (long long t = std::max(0LL, s - 2); t <= s + 2; ++t)
    if (static_cast<__int128>(t) * t == v) return true;
  return false;
}

// Searches x, y in [-B, B] for a rational z making the form vanish.
bool search_zero(const long g[3][3], long B) {
  for (long x = 0; x <= B; ++x)
    for (long y = -B; y <= B; ++y) {
      if (x == 0 && y <= 0) continue;
      __int128 a = g[2][2], b = 2 * (static_cast<__int128>(g[0][2]) * x + static_cast<__int128>(g[1][2]) * y);
      __int128 c = static_cast<__int128>(g[0][0]) * x * x + 2 * static_cast<__int128>(g[0][1]) * x * y + static_cast<__int128>(g[1][1]) * y * y;
      if (a == 0) {
        if (b != 0 || c == 0) return true;
        continue;
      }
      if (is_square_i64(b * b - 4 * a * c)) return true;
    }
  // x = y = 0 forces z = 0 unless g33 = 0
  return g[2][2] == 0;
}

}  // namespace

TEST(Isotropy, AgreesWithExhaustiveSearchOnRandomTernaryForms) {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 100) {
    long g[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) g[i][j] = g[j][i] = static_cast<long>(rng() % 41) - 20;
    std::vector<std::vector<Rat>> gram(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rat(g[i][j]);
    QForm f(gram);
    if (sgn(f.determinant()) == 0) continue;
    ++tested;
    bool predicted = is_isotropic_over_Q(f).isotropic;
    bool found = search_zero(g, 1000);
    EXPECT_EQ(predicted, found) << f.str();
  }
}

TEST(FactorQ, KnownFactorisations) {
  QPoly f = (qx() * qx() + 1L) * (qx() - 3L) * (QPoly({Rat(2), Rat(0), Rat(0), Rat(1)})) * (qx() * Rat(2) + 1L);
  auto fs = factor_Q(f);
  ASSERT_EQ(fs.size(), 4u);
  EXPECT_EQ(fs[0].first.degree(), 1);
  EXPECT_EQ(fs[1].first.degree(), 1);
  EXPECT_EQ(fs[2].first, qx() * qx() + 1L);
  EXPECT_EQ(fs[3].first, QPoly({Rat(2), Rat(0), Rat(0), Rat(1)}));
  EXPECT_EQ(roots_Q(f), (std::vector<Rat>{make_rat(-1, 2), Rat(3)}));
}

TEST(FactorQ, SwinnertonDyerLikeRecombination) {
  // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
  QPoly f({Rat(1), Rat(0), Rat(-10), Rat(0), Rat(1)});
  auto fs = factor_Q(f * f * (qx() + 7L));
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[1].first, f);
  EXPECT_EQ(fs[1].second, 2);
}

TEST(FactorQ, ProductOfRandomFactorsReconstructs) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 10; ++it) {
    QPoly prod = QPoly::constant(Rat(1));
    for (int k = 0; k < 3; ++k) {
      int d = 1 + static_cast<int>(rng() % 4);
      std::vector<Rat> c;
      for (int i = 0; i < d; ++i) c.emplace_back(static_cast<long>(rng() % 41) - 20);
      c.emplace_back(1);
      prod = prod * QPoly(c, Rat(0));
    }
    QPoly back = QPoly::constant(Rat(1));
    for (auto& [g, m] : factor_Q(prod)) back = back * g.pow(static_cast<unsigned>(m));
    EXPECT_EQ(back, prod.monic());
  }
}

TEST(RatFunc, FieldOperations) {
  QRatFunc t = QRatFunc::variable(Rat(0));
  QRatFunc one = field_traits<QRatFunc>::one(t);
  QRatFunc f = (t * t - one) / (t - one);
  EXPECT_EQ(f, t + one);
  EXPECT_EQ(f.den().degree(), 0);
  QRatFunc g = one / (t * t);
  EXPECT_EQ(g.valuation_infinity(), 2);
  EXPECT_EQ(g.valuation(qx()), -2);
  EXPECT_EQ((g * t * t), one);
}

TEST(MPoly, DerivativeSubstituteAndText) {
  MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
  MPoly f = x.pow(3) + Rat(2) * x * y - y.pow(2) * Rat(make_rat(1, 3));
  EXPECT_EQ(f.derivative(0), Rat(3) * x.pow(2) + Rat(2) * y);
  EXPECT_EQ(f.eval(std::vector<Rat>{Rat(1), Rat(3)}), Rat(1 + 6 - 3));
  MPoly g = f.substitute({y, x});
  EXPECT_EQ(g.eval(std::vector<Rat>{Rat(3), Rat(1)}), Rat(4));
  EXPECT_EQ(f.str({"x", "y"}), "x^3 + 2*x*y - 1/3*y^2");
  EXPECT_TRUE((x * y + y * y).is_homogeneous());
}

TEST(QuadExt, ArithmeticAndSqrt) {
  QuadRat s = QuadRat::sqrt_d(Rat(-2));
  QuadRat one = field_traits<QuadRat>::one(s);
  EXPECT_EQ(s * s, QuadRat::from_base(Rat(-2), Rat(-2)));
  QuadRat z = (one + s) / (one - s);
  EXPECT_EQ(z * (one - s), one + s);
  QuadRat r;
  ASSERT_TRUE(quad_sqrt(QuadRat::from_base(Rat(-8), Rat(-2)), r));
  EXPECT_EQ(r * r, QuadRat::from_base(Rat(-8), Rat(-2)));
  QuadRat w = (one + s) * (one + s);
  ASSERT_TRUE(quad_sqrt(w, r));
  EXPECT_EQ(r * r, w);
}
