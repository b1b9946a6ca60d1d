#pragma once

// Arbitrary precision integers and rationals (GMP backed), the field-traits
// shim used by the generic polynomial code, and small integer number theory.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zsurf {

using Int = mpz_class;
using Rat = mpq_class;

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw AlgebraError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw AlgebraError("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q".
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw AlgebraError("bad rational literal: " + s);
  if (r.get_den() == 0) throw AlgebraError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(10); }
inline std::string to_string(const Int& n) { return n.get_str(10); }

// Field traits: every coefficient type K used by the generic algebra exposes
// zero/one/integers built "like" an existing element (so that context-carrying
// elements such as finite field elements can be produced), a zero test and the
// characteristic.
template <class K>
struct field_traits;

template <>
struct field_traits<Rat> {
  static Rat zero(const Rat&) { return Rat(0); }
  static Rat one(const Rat&) { return Rat(1); }
  static Rat from_int(const Rat&, long n) { return Rat(n); }
  static bool is_zero(const Rat& a) { return sgn(a) == 0; }
  static long characteristic(const Rat&) { return 0; }
  static std::string str(const Rat& a) { return to_string(a); }
};

template <class K>
K zero_like(const K& x) {
  return field_traits<K>::zero(x);
}
template <class K>
K one_like(const K& x) {
  return field_traits<K>::one(x);
}
template <class K>
K int_like(const K& x, long n) {
  return field_traits<K>::from_int(x, n);
}
template <class K>
bool is_zero(const K& x) {
  return field_traits<K>::is_zero(x);
}
template <class K>
long characteristic(const K& x) {
  return field_traits<K>::characteristic(x);
}

template <class K>
K power(K base, std::uint64_t e) {
  K acc = one_like(base);
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Integer number theory

inline bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

inline bool is_prime_u64(std::uint64_t n) { return is_probable_prime(Int(static_cast<unsigned long>(n))); }

namespace detail {

inline Int pollard_rho(const Int& n, std::uint64_t seed) {
  if (n % 2 == 0) return Int(2);
  std::mt19937_64 rng(seed);
  for (;;) {
    Int c = Int(static_cast<unsigned long>(rng() % 1000000 + 1));
    Int x = Int(static_cast<unsigned long>(rng() % 1000000 + 2)), y = x, d = 1;
    auto f = [&](const Int& v) {
      Int r = (v * v + c) % n;
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Int diff = x - y;
      if (diff < 0) diff = -diff;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

inline void factor_into(const Int& n, std::map<Int, int>& out, std::uint64_t seed) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_rho(n, seed);
  factor_into(d, out, seed + 1);
  factor_into(Int(n / d), out, seed + 2);
}

}  // namespace detail

/// Prime factorisation of |n| (n != 0), ascending primes.
inline std::vector<std::pair<Int, int>> factor_integer(Int n) {
  if (n == 0) throw AlgebraError("factor_integer: zero");
  if (n < 0) n = -n;
  std::map<Int, int> out;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[Int(p)];
      n /= p;
    }
  }
  detail::factor_into(n, out, 12345);
  return {out.begin(), out.end()};
}

/// Signed squarefree kernel: n = kernel * m^2.
inline Int squarefree_kernel(const Int& n) {
  if (n == 0) throw AlgebraError("squarefree_kernel: zero");
  Int k = (n < 0) ? Int(-1) : Int(1);
  for (auto& [p, e] : factor_integer(n))
    if (e % 2) k *= p;
  return k;
}

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Exact rational square root, if any.
inline bool rat_sqrt(const Rat& q, Rat& out) {
  if (q < 0) return false;
  Int n = q.get_num(), d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = make_rat(rn, rd);
  return true;
}

inline bool is_rat_square(const Rat& q) {
  Rat r;
  return rat_sqrt(q, r);
}

/// Exact rational cube root, if any.
inline bool rat_cbrt(const Rat& q, Rat& out) {
  Int n = q.get_num(), d = q.get_den(), rn, rd;
  if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 3) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 3) == 0) return false;
  out = make_rat(rn, rd);
  return true;
}

/// p-adic valuation of a nonzero rational.
inline int padic_val(const Rat& q, const Int& p) {
  if (sgn(q) == 0) throw AlgebraError("padic_val of zero");
  int v = 0;
  Int n = q.get_num(), d = q.get_den();
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

inline long mod_long(const Int& a, long m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r.get_si();
}

/// Reduces a rational modulo p (p must not divide the denominator).
inline std::uint32_t rat_mod_p(const Rat& q, std::uint32_t p) {
  long n = mod_long(q.get_num(), p), d = mod_long(q.get_den(), p);
  if (d == 0) throw AlgebraError("rat_mod_p: denominator divisible by p");
  Int inv;
  Int dd(d), pp(static_cast<unsigned long>(p));
  mpz_invert(inv.get_mpz_t(), dd.get_mpz_t(), pp.get_mpz_t());
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(n) * inv.get_ui()) % p);
}

}  // namespace zsurf
