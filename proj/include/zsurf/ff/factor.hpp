#pragma once

// Factorisation of univariate polynomials over finite fields: squarefree
// decomposition, distinct-degree splitting and Cantor-Zassenhaus with a fixed
// seed, so results are reproducible.

#include <zsurf/ff/residue.hpp>

#include <algorithm>
#include <random>
#include <vector>

namespace zsurf {

namespace detail {

template <class K>
Poly<K> frob_power_mod(const Poly<K>& a, const Poly<K>& f) {
  return poly_powmod(a, field_order(f.zero_elem()), f);
}

template <class K>
std::vector<std::pair<Poly<K>, int>> distinct_degree(Poly<K> f) {
  std::vector<std::pair<Poly<K>, int>> out;
  Poly<K> x = Poly<K>::x(f.zero_elem());
  Poly<K> h = x % f;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = frob_power_mod(h, f);
    Poly<K> g = poly_gcd(h - x, f);
    if (g.degree() > 0) {
      out.push_back({g, d});
      f = f.exact_div(g).monic();
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back({f.monic(), f.degree()});
  return out;
}

template <class K>
void equal_degree(const Poly<K>& f, int d, std::mt19937_64& rng, std::vector<Poly<K>>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  Int q = field_order(f.zero_elem());
  Int e = 1;
  for (int i = 0; i < d; ++i) e *= q;
  e = (e - 1) / 2;
  K z = f.zero_elem();
  for (;;) {
    std::vector<K> c;
    for (int i = 0; i < f.degree(); ++i) c.push_back(random_elem(z, rng));
    Poly<K> a(std::move(c), z);
    if (a.degree() <= 0) continue;
    Poly<K> g = poly_gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f.exact_div(g).monic(), d, rng, out);
      return;
    }
    Poly<K> b = poly_powmod(a, e, f) - Poly<K>::constant(one_like(z));
    g = poly_gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f.exact_div(g).monic(), d, rng, out);
      return;
    }
  }
}

template <class K>
bool poly_less(const Poly<K>& a, const Poly<K>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    std::string sa = field_traits<K>::str(a.coeff(i)), sb = field_traits<K>::str(b.coeff(i));
    if (sa != sb) return sa.size() != sb.size() ? sa.size() < sb.size() : sa < sb;
  }
  return false;
}

}  // namespace detail

/// Monic irreducible factors with multiplicities, sorted by degree.
template <class K>
std::vector<std::pair<Poly<K>, int>> factor_ff(const Poly<K>& f) {
  std::vector<std::pair<Poly<K>, int>> out;
  if (f.degree() <= 0) return out;
  std::mt19937_64 rng(0x5eed);
  auto sqf = squarefree_decomposition(f, [](const K& a) { return field_p_root(a); });
  for (auto& [g, m] : sqf)
    for (auto& [h, d] : detail::distinct_degree(g)) {
      std::vector<Poly<K>> parts;
      detail::equal_degree(h, d, rng, parts);
      for (auto& part : parts) out.push_back({part, m});
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return detail::poly_less(a.first, b.first); });
  return out;
}

/// Roots in the coefficient field, each listed once.
template <class K>
std::vector<K> roots_ff(const Poly<K>& f) {
  std::vector<K> r;
  if (f.degree() <= 0) return r;
  Poly<K> x = Poly<K>::x(f.zero_elem());
  Poly<K> g = poly_gcd(detail::frob_power_mod(x % f, f) - x, f);
  if (g.degree() <= 0) return r;
  std::mt19937_64 rng(0x5eed);
  std::vector<Poly<K>> parts;
  detail::equal_degree(g, 1, rng, parts);
  for (auto& part : parts) r.push_back(-part.coeff(0));
  return r;
}

/// Number of distinct roots in the coefficient field.
template <class K>
int count_roots_ff(const Poly<K>& f) {
  if (f.degree() <= 0) return 0;
  Poly<K> x = Poly<K>::x(f.zero_elem());
  return std::max(0, poly_gcd(detail::frob_power_mod(x % f, f) - x, f).degree());
}

}  // namespace zsurf
