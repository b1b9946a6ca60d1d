#pragma once

// Cyclotomic polynomials and the split f = g*h into a product of cyclotomic
// factors g and a factor h with no roots of unity as roots.

#include <zsurf/algebra/upoly.hpp>

#include <map>
#include <vector>

namespace zsurf {

inline long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

/// Phi_d over Q, memoised.
inline const QPoly& cyclotomic_poly(long d) {
  static thread_local std::map<long, QPoly> memo;
  auto it = memo.find(d);
  if (it != memo.end()) return it->second;
  QPoly f = QPoly::monomial(Rat(1), static_cast<std::size_t>(d)) - QPoly::constant(Rat(1));
  for (long e = 1; e < d; ++e)
    if (d % e == 0) f = f.exact_div(cyclotomic_poly(e));
  return memo.emplace(d, std::move(f)).first->second;
}

struct CyclotomicSplit {
  QPoly g;                            // product of cyclotomic factors
  QPoly h;                            // remaining factor
  std::vector<std::pair<long, int>> factors;  // (d, multiplicity) making up g
};

inline CyclotomicSplit cyclotomic_split(const QPoly& f) {
  if (f.is_zero() || f.coeff(0) != 1) throw AlgebraError("cyclotomic_split: need f(0) = 1");
  CyclotomicSplit out{QPoly::constant(Rat(1)), f, {}};
  int n = f.degree();
  // phi(d) >= sqrt(d/2), so d <= 2 n^2 covers every phi(d) <= n
  long dmax = 2L * n * n + 2;
  for (long d = 1; d <= dmax && out.h.degree() > 0; ++d) {
    if (euler_phi(d) > out.h.degree()) continue;
    const QPoly& c = cyclotomic_poly(d);
    int k = 0;
    for (;;) {
      QPoly q, r;
      QPoly::divmod(out.h, c, q, r);
      if (!r.is_zero()) break;
      out.h = q;
      out.g = out.g * c;
      ++k;
    }
    if (k) out.factors.push_back({d, k});
  }
  return out;
}

}  // namespace zsurf
