#include <gtest/gtest.h>

#include <zsurf/moduli/catalog.hpp>
#include <zsurf/surface/kodaira.hpp>

using namespace zsurf;

TEST(Kodaira, CatalogFiberTables) {
  for (auto& e : catalog()) {
    auto S = analyze_fibers(e.model());
    EXPECT_EQ(fiber_multiset(S), e.fibers) << e.id();
    EXPECT_EQ(S.m, e.m()) << e.id();
    EXPECT_EQ(S.euler_total, 12 * e.m()) << e.id();
  }
}
