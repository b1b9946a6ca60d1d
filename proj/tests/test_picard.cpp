#include <gtest/gtest.h>

#include <zsurf/zeta/picard.hpp>

#include <filesystem>
#include <map>

using namespace zsurf;

namespace {

const PrimeRecord& record(const SurfaceEntry& E, unsigned p) {
  static std::map<std::pair<std::string, unsigned>, PrimeRecord> cache;
  auto key = std::make_pair(E.id(), p);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, frobenius_at(E, p)).first;
  return it->second;
}

Int count_from_table(const SurfaceEntry& E, unsigned p, int r) {
  QPoly f = parse_qpoly(E.frob_at(p)->f, 'x');
  // power sums of the reciprocal roots are those of the roots, f being palindromic up to sign
  Rat t = root_power_sums(f, r)[static_cast<std::size_t>(r)];
  return count_from_trace(p, r, t);
}

}  // namespace

TEST(Picard, FrobeniusPolynomialsMatchCatalog) {
  for (auto& E : catalog())
    for (auto& fr : E.frob) {
      const PrimeRecord& rec = record(E, fr.p);
      EXPECT_EQ(rec.frob.f, parse_qpoly(fr.f, 'x')) << E.id() << " p=" << fr.p;
      // the cyclotomic part is exact; the rest is checked numerically
      EXPECT_TRUE(roots_on_unit_circle(rec.frob.split.h)) << E.id() << " p=" << fr.p;
      EXPECT_EQ(rec.frob.f.degree(), E.b2()) << E.id();
    }
}

TEST(Picard, SquareClassesAgreeAcrossBothRoutes) {
  for (auto& E : catalog())
    for (auto& fr : E.frob) {
      const PrimeRecord& rec = record(E, fr.p);
      EXPECT_EQ(rec.delta_kl, square_class(Rat(fr.delta_value))) << E.id() << " p=" << fr.p;
      if (rec.delta_bsd) {
        EXPECT_EQ(*rec.delta_bsd, rec.delta_kl) << E.id() << " p=" << fr.p;
      }
    }
  // both routes have inputs at least here
  EXPECT_TRUE(record(find_surface("9,1"), 5).delta_bsd.has_value());
  EXPECT_TRUE(record(find_surface("10,3"), 31).delta_bsd.has_value());
}

TEST(Picard, KnownFactorDividesAndSectionsRespectTheBound) {
  for (auto& E : catalog())
    for (auto& fr : E.frob) {
      const PrimeRecord& rec = record(E, fr.p);
      EXPECT_LE(rec.trivial_rank + rec.sections_plus + rec.sections_minus, rec.rho_p) << E.id() << " p=" << fr.p;
      EXPECT_LE(rec.sections_plus + rec.sections_minus, rec.mw_bound) << E.id() << " p=" << fr.p;
    }
}

TEST(Picard, PointCountOracles) {
  // n_r = 1 + p^(2r) + p^r tr(Frob^r) with the catalog polynomials
  const SurfaceEntry &A = find_surface("9,1"), &B = find_surface("12,1");
  EXPECT_EQ(count_from_table(A, 5, 1), 84);
  EXPECT_EQ(count_from_table(A, 5, 2), 1050);
  EXPECT_EQ(count_from_table(B, 5, 1), 80);
  auto k = prime_field(5);
  auto SA = analyze_mod_p(A.model(), *k), SB = analyze_mod_p(B.model(), *k);
  EXPECT_EQ(count_surface(SA, 1), 84);
  EXPECT_EQ(count_surface(SA, 2), 1050);
  EXPECT_EQ(count_surface(SB, 1), 80);
  for (auto& E : catalog())
    for (auto& fr : E.frob)
      for (auto& [r, n] : record(E, fr.p).counts.n) EXPECT_EQ(n, count_from_table(E, fr.p, r)) << E.id() << " p=" << fr.p << " r=" << r;
}

TEST(Picard, NaiveAndBsgsSurfaceCountsAgree) {
  const SurfaceEntry& E = find_surface("9,1");
  auto k = prime_field(7);
  auto Sp = analyze_mod_p(E.model(), *k);
  for (int r = 1; r <= 3; ++r) EXPECT_EQ(count_surface(Sp, r, 1, 0), count_surface(Sp, r, 1, 1u << 30)) << "r=" << r;
  EXPECT_EQ(count_surface(Sp, 3, 4), count_surface(Sp, 3, 1));
}

TEST(Picard, TrivialLatticeOnlyReconstruction) {
  // without sections the known factor is smaller and more counts are needed
  for (auto [id, p] : std::vector<std::pair<std::string, unsigned>>{{"9,1", 5}, {"12,1", 5}, {"9,2", 7}}) {
    const SurfaceEntry& E = find_surface(id);
    FrobeniusOptions o;
    o.use_sections = false;
    o.workers = 4;
    PrimeRecord rec = frobenius_at(E, p, o);
    EXPECT_EQ(rec.frob.f, parse_qpoly(E.frob_at(p)->f, 'x')) << id << " p=" << p;
    EXPECT_GT(rec.counts.n.rbegin()->first, record(E, p).counts.n.rbegin()->first) << id;
  }
}

TEST(Picard, CountCacheRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "zsurf-cache-test";
  std::filesystem::remove_all(dir);
  const SurfaceEntry& E = find_surface("12,1");
  FrobeniusOptions o;
  o.cache_dir = dir.string();
  PrimeRecord a = frobenius_at(E, 11, o);
  CountCache cache(o.cache_dir);
  ASSERT_TRUE(std::filesystem::exists(cache.path(E.slug(), 11)));
  PrimeRecord b = frobenius_at(E, 11, o);
  EXPECT_EQ(a.frob.f, b.frob.f);
  EXPECT_EQ(a.counts.n, b.counts.n);
  for (auto& [r, m] : b.counts.method) EXPECT_EQ(m, "cache");
  // a foreign code version is ignored
  {
    std::ifstream in(cache.path(E.slug(), 11));
    nlohmann::json j;
    in >> j;
    j["code_version"] = "other";
    std::ofstream(cache.path(E.slug(), 11)) << j.dump();
  }
  EXPECT_TRUE(cache.load(E.slug(), 11).n.empty());
  std::filesystem::remove_all(dir);
}

TEST(Picard, BadPrimeRejected) {
  EXPECT_THROW(frobenius_at(find_surface("9,1"), 3), AlgebraError);
  EXPECT_FALSE(good_prime_test(find_surface("10,1").model(), 5));
}

TEST(Picard, VanLuijkNeedsDistinctClasses) {
  const SurfaceEntry& E = find_surface("9,1");
  const PrimeRecord &a = record(E, 5), &b = record(E, 7);
  EXPECT_EQ(van_luijk(a, b), std::optional<int>(a.rho_p - 1));
  EXPECT_FALSE(van_luijk(a, a).has_value());
}

TEST(Picard, CertifyAllSurfaces) {
  const std::map<std::string, std::string> closing = {{"6,5", "hodge"},      {"7,3", "hodge"},     {"8,3", "hodge"},       {"8,5", "hodge"},
                                                      {"8,7", "hodge"},      {"9,1", "van_luijk"}, {"12,1", "van_luijk"},  {"9,2", "van_luijk"},
                                                      {"10,1", "rank4_form"}, {"10,3", "rank4_form"}, {"11,1", "rank4_form"}};
  PicardOptions o;
  o.frob.workers = 4;
  for (auto& E : catalog()) {
    PicardCertificate c = certify_picard(E, o);
    ASSERT_TRUE(c.closed()) << E.id();
    EXPECT_EQ(c.rho, E.rho) << E.id();
    EXPECT_EQ(c.lower_bound, E.rho) << E.id();
    EXPECT_EQ(c.steps.back().method, closing.at(E.id())) << E.id();
    if (E.insoluble_at) {
      ASSERT_TRUE(c.refinement.has_value()) << E.id();
      EXPECT_EQ(c.refinement->witness, place_prime(E.insoluble_at)) << E.id();
    }
  }
}

TEST(Picard, SmallScopeLeavesLargeSurfacesOpen) {
  PicardOptions o;
  o.large_scope = false;
  PicardCertificate c = certify_picard(find_surface("11,1"), o);
  EXPECT_FALSE(c.closed());
  EXPECT_TRUE(c.primes.empty());
}

TEST(Picard, TimeBudgetStopsBetweenCounts) {
  FrobeniusOptions o;
  o.time_budget = 1e-12;
  try {
    frobenius_at(find_surface("9,1"), 7, o);
    FAIL() << "budget not enforced";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.counted_up_to, 0);
  }
}
