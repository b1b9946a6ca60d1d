#pragma once

// Frobenius characteristic polynomials on H^2 from point counts: power sums
// from the trace formula, the known trivial-lattice factor divided out, and
// the rest rebuilt from Newton's identities and the functional equation.

#include <zsurf/algebra/cyclotomic.hpp>
#include <zsurf/algebra/square_class.hpp>

#include <complex>
#include <map>
#include <optional>

namespace zsurf {

struct InsufficientData : AlgebraError {
  int next_r;
  InsufficientData(const std::string& what, int r) : AlgebraError(what), next_r(r) {}
};

struct FrobCharPoly {
  unsigned p = 0;
  QPoly f;       // f(0) = 1, degree b2
  int sign = 1;  // f(x) = sign x^b2 f(1/x)
  CyclotomicSplit split;
};

/// t_r = (n_r - 1 - p^{2r}) / p^r, the trace of Frobenius^r on H^2(1).
inline Rat trace_from_count(unsigned p, int r, const Int& n) {
  Int pr = 1;
  for (int i = 0; i < r; ++i) pr *= static_cast<unsigned long>(p);
  return Rat(n - 1 - pr * pr) / Rat(pr);
}

/// Inverse of trace_from_count.
inline Int count_from_trace(unsigned p, int r, const Rat& t) {
  Int pr = 1;
  for (int i = 0; i < r; ++i) pr *= static_cast<unsigned long>(p);
  Rat n = Rat(1 + pr * pr) + t * Rat(pr);
  if (n.get_den() != 1) throw AlgebraError("count_from_trace: non-integral count");
  return n.get_num();
}

/// e_1..e_D of the roots of f (any normalisation).
inline std::vector<Rat> elementary_symmetric(const QPoly& f) {
  int D = f.degree();
  std::vector<Rat> e(static_cast<std::size_t>(D) + 1);
  for (int i = 0; i <= D; ++i) {
    Rat c = f.coeff(D - i) / f.lead();
    e[static_cast<std::size_t>(i)] = (i % 2 ? -c : c);
  }
  return e;
}

/// Power sums p_1..p_R of the roots of f.
inline std::vector<Rat> root_power_sums(const QPoly& f, int R) {
  auto e = elementary_symmetric(f);
  int D = f.degree();
  std::vector<Rat> ps(static_cast<std::size_t>(R) + 1, Rat(0));
  for (int k = 1; k <= R; ++k) {
    Rat s = 0;
    for (int i = 1; i < k; ++i) {
      Rat ei = i <= D ? e[static_cast<std::size_t>(i)] : Rat(0);
      s += (i % 2 ? ei : Rat(-ei)) * ps[static_cast<std::size_t>(k - i)];
    }
    Rat ek = k <= D ? e[static_cast<std::size_t>(k)] : Rat(0);
    // p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    ps[static_cast<std::size_t>(k)] = s + (k % 2 ? Rat(1) : Rat(-1)) * Rat(k) * ek;
  }
  return ps;
}

/// Monic polynomial whose roots have elementary symmetric functions e.
inline QPoly from_elementary(const std::vector<Rat>& e) {
  int D = static_cast<int>(e.size()) - 1;
  std::vector<Rat> c(static_cast<std::size_t>(D) + 1);
  for (int i = 0; i <= D; ++i) c[static_cast<std::size_t>(D - i)] = i % 2 ? Rat(-e[static_cast<std::size_t>(i)]) : e[static_cast<std::size_t>(i)];
  return QPoly(c);
}

namespace detail {

inline std::vector<std::complex<long double>> numeric_roots(const QPoly& f) {
  int D = f.degree();
  std::vector<std::complex<long double>> c(static_cast<std::size_t>(D) + 1);
  for (int i = 0; i <= D; ++i) c[static_cast<std::size_t>(i)] = static_cast<long double>(Rat(f.coeff(i) / f.lead()).get_d());
  std::vector<std::complex<long double>> z(static_cast<std::size_t>(D));
  std::complex<long double> seed(0.4L, 0.9L);
  for (int i = 0; i < D; ++i) z[static_cast<std::size_t>(i)] = std::pow(seed, i);
  auto ev = [&](std::complex<long double> x) {
    std::complex<long double> a = 0;
    for (int i = D; i >= 0; --i) a = a * x + c[static_cast<std::size_t>(i)];
    return a;
  };
  for (int it = 0; it < 2000; ++it) {
    long double delta = 0;
    for (int i = 0; i < D; ++i) {
      std::complex<long double> den = 1;
      for (int j = 0; j < D; ++j)
        if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      std::complex<long double> step = ev(z[static_cast<std::size_t>(i)]) / den;
      z[static_cast<std::size_t>(i)] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-15L) break;
  }
  return z;
}

}  // namespace detail

/// Roots of absolute value one, checked numerically (multiple roots converge
/// slowly, hence the loose tolerance).
inline bool roots_on_unit_circle(const QPoly& f, long double tol = 1e-4L) {
  if (f.degree() <= 0) return true;
  for (auto& z : detail::numeric_roots(f))
    if (std::abs(std::abs(z) - 1.0L) > tol) return false;
  return true;
}

/// Rebuilds f_p from traces t_1..t_R (index 0 unused) and a known factor.
/// Throws InsufficientData when more traces are needed to decide.
inline FrobCharPoly charpoly_from_traces(unsigned p, const std::map<int, Rat>& traces, const QPoly& known, int b2) {
  int D = b2 - known.degree();
  if (D < 0) throw AlgebraError("charpoly_from_traces: known factor too large");
  int R = 0;
  while (traces.count(R + 1)) ++R;
  int h = D / 2;
  if (R < std::max(h, 1) && D > 0) throw InsufficientData("charpoly_from_traces: need more traces", R + 1);
  auto ks = root_power_sums(known, std::max(R, 1));
  std::vector<Rat> u(static_cast<std::size_t>(R) + 1, Rat(0));
  for (int r = 1; r <= R; ++r) u[static_cast<std::size_t>(r)] = traces.at(r) - ks[static_cast<std::size_t>(r)];

  // e_1..e_h by Newton's identities
  std::vector<Rat> e(static_cast<std::size_t>(D) + 1, Rat(0));
  e[0] = 1;
  for (int k = 1; k <= h; ++k) {
    Rat s = 0;
    for (int i = 1; i <= k; ++i) s += (i % 2 ? Rat(1) : Rat(-1)) * e[static_cast<std::size_t>(k - i)] * u[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(k)] = s / Rat(k);
  }
  std::vector<QPoly> good;
  for (int c : {1, -1}) {
    // (-1)^i e_i = c (-1)^{D-i} e_{D-i}
    auto ec = e;
    bool ok = true;
    for (int i = 0; i <= h; ++i) {
      Rat v = ec[static_cast<std::size_t>(i)] * Rat(c) * Rat((D % 2) ? -1 : 1);
      int j = D - i;
      if (j == i) {
        if (v != ec[static_cast<std::size_t>(i)]) ok = false;
      } else {
        ec[static_cast<std::size_t>(j)] = v;
      }
    }
    if (!ok) continue;
    QPoly U = from_elementary(ec);
    // integrality of the p-scaled polynomial
    Int pk = 1;
    for (int i = 0; i <= D && ok; ++i) {
      if (Rat(ec[static_cast<std::size_t>(i)] * Rat(pk)).get_den() != 1) ok = false;
      pk *= p;
    }
    if (!ok) continue;
    auto us = root_power_sums(U, R);
    for (int r = 1; r <= R && ok; ++r)
      if (us[static_cast<std::size_t>(r)] != u[static_cast<std::size_t>(r)]) ok = false;
    if (!ok || !roots_on_unit_circle(U)) continue;
    good.push_back(U);
  }
  if (good.empty()) {
    if (R <= h) throw InsufficientData("charpoly_from_traces: no consistent candidate", R + 1);
    throw AlgebraError("charpoly_from_traces: counts inconsistent with the known factor");
  }
  if (good.size() > 1 && !(good[0] == good[1])) throw InsufficientData("charpoly_from_traces: both signs consistent", R + 1);
  FrobCharPoly out;
  out.p = p;
  QPoly f = known * good[0];
  out.f = f * (Rat(1) / f.coeff(0));
  out.sign = out.f.lead() == 1 ? 1 : -1;
  if (out.f.lead() != 1 && out.f.lead() != -1) throw AlgebraError("charpoly_from_traces: not palindromic");
  out.split = cyclotomic_split(out.f);
  return out;
}

inline FrobCharPoly charpoly_from_counts(unsigned p, const std::map<int, Int>& counts, const QPoly& known, int b2) {
  std::map<int, Rat> t;
  for (auto& [r, n] : counts) t[r] = trace_from_count(p, r, n);
  return charpoly_from_traces(p, t, known, b2);
}

/// Upper bound for the Picard number of the reduction.
inline int rho_p_upper(const FrobCharPoly& F) { return F.split.g.degree(); }

/// |h_p(1) h_p(-1)| up to squares.
inline SquareClass delta_p_kl(const FrobCharPoly& F) {
  const QPoly& h = F.split.h;
  Rat v = h(Rat(1)) * h(Rat(-1));
  return square_class(abs(v));
}

}  // namespace zsurf
